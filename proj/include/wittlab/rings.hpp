#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "wittlab/cyclotomic.hpp"
#include "wittlab/fraction.hpp"
#include "wittlab/polynomial.hpp"
#include "wittlab/rings_basic.hpp"

namespace wittlab {

inline RingPtr make_ring(const RingDescriptor& d) {
    switch (d.kind) {
        case RingDescriptor::Kind::Integers: return std::make_shared<IntegerRing>();
        case RingDescriptor::Kind::PLocalRationals: return std::make_shared<PLocalRationalRing>(d.p);
        case RingDescriptor::Kind::Modular: return std::make_shared<ModularRing>(d.modulus);
        case RingDescriptor::Kind::CyclotomicQuotient: return std::make_shared<CyclotomicQuotientRing>(d.p, d.l);
        case RingDescriptor::Kind::CyclotomicLift: return std::make_shared<CyclotomicLiftRing>(d.p, d.l);
        case RingDescriptor::Kind::PolynomialExtension: return std::make_shared<PolynomialRing>(make_ring(*d.base), d.vars);
        case RingDescriptor::Kind::FractionField: return std::make_shared<FractionFieldRing>(make_ring(*d.base));
    }
    throw invalid_descriptor("unknown ring kind");
}

// Every element exactly once, in the deterministic element_at order.
inline std::vector<Elem> enumerate_elements(const RingPtr& r) {
    if (!r->is_finite()) throw not_finite(r->to_string_name());
    mpz_class n = r->cardinality();
    if (n > (1 << 24)) throw not_finite("ring too large to enumerate: " + r->to_string_name());
    std::vector<Elem> out;
    out.reserve(n.get_ui());
    for (mpz_class i = 0; i < n; ++i) out.push_back(r->element_at(i));
    return out;
}

// --- cross-ring maps ----------------------------------------------------

// Embed x into target along the canonical inclusions of the tower
// (constants into polynomial rings, domains into their fraction fields,
// integers/p-local rationals into any ring where the image makes sense).
inline Elem embed(const RingPtr& target, const Elem& x) {
    if (target->descriptor() == x.ring().descriptor()) return x;
    if (auto poly = std::dynamic_pointer_cast<const PolynomialRing>(target)) {
        return poly->constant(embed(poly->base(), x));
    }
    if (auto frac = std::dynamic_pointer_cast<const FractionFieldRing>(target)) {
        if (x.ring().descriptor().kind == RingDescriptor::Kind::PLocalRationals) {
            const mpq_class& q = PLocalRationalRing::val(x);
            Elem n = embed(frac->base(), frac->base()->from_integer(q.get_num()));
            Elem d = embed(frac->base(), frac->base()->from_integer(q.get_den()));
            return frac->of(n, d);
        }
        return frac->of(embed(frac->base(), x));
    }
    if (x.ring().descriptor().kind == RingDescriptor::Kind::Integers) return target->from_integer(IntegerRing::val(x));
    if (x.ring().descriptor().kind == RingDescriptor::Kind::PLocalRationals) {
        const mpq_class& q = PLocalRationalRing::val(x);
        return target->exact_div(target->from_integer(q.get_num()), target->from_integer(q.get_den()));
    }
    throw invalid_descriptor("no embedding of " + x.ring().to_string_name() + " into " + target->to_string_name());
}

inline Elem rational_in(const RingPtr& target, const mpq_class& q) {
    if (q.get_den() == 1) return target->from_integer(q.get_num());
    return target->exact_div(target->from_integer(q.get_num()), target->from_integer(q.get_den()));
}

// Reduce x from a p-torsion-free lift ring (or Z, Z_(p)) onto the declared
// quotient: Z / Z_(p) -> Z/N, cyclotomic lift -> cyclotomic quotient, and
// coefficient-wise through polynomial rings and integral fractions.
inline Elem reduce_elem(const RingPtr& target, const Elem& x) {
    const auto& sd = x.ring().descriptor();
    const auto& td = target->descriptor();
    if (sd == td) return x;
    using K = RingDescriptor::Kind;
    if (td.kind == K::Modular && sd.kind == K::Integers) return target->from_integer(IntegerRing::val(x));
    if (td.kind == K::Modular && sd.kind == K::PLocalRationals) {
        const mpq_class& q = PLocalRationalRing::val(x);
        const auto& mod = std::static_pointer_cast<const ModularRing>(target)->modulus();
        mpz_class inv;
        if (!mpz_invert(inv.get_mpz_t(), q.get_den().get_mpz_t(), mod.get_mpz_t()))
            throw not_divisible("denominator not invertible modulo " + mod.get_str());
        return target->from_integer(q.get_num() * inv);
    }
    if (td.kind == K::CyclotomicQuotient && sd.kind == K::CyclotomicLift && td.p == sd.p && td.l == sd.l) {
        auto q = std::static_pointer_cast<const CyclotomicQuotientRing>(target);
        const auto& src = CyclotomicLiftRing::val(x);
        const mpz_class& mod = q->char_modulus();
        std::vector<mpz_class> coeffs(src.size());
        for (size_t i = 0; i < src.size(); ++i) {
            mpz_class inv;
            if (!mpz_invert(inv.get_mpz_t(), src[i].get_den().get_mpz_t(), mod.get_mpz_t()))
                throw not_divisible("coefficient denominator not invertible in quotient");
            coeffs[i] = src[i].get_num() * inv;
            mpz_fdiv_r(coeffs[i].get_mpz_t(), coeffs[i].get_mpz_t(), mod.get_mpz_t());
        }
        return q->of(std::move(coeffs));
    }
    if (td.kind == K::PolynomialExtension && sd.kind == K::PolynomialExtension && td.vars == sd.vars) {
        auto tp = std::static_pointer_cast<const PolynomialRing>(target);
        std::map<Monomial, Elem> terms;
        for (const auto& [m, c] : PolynomialRing::val(x).terms) terms.emplace(m, reduce_elem(tp->base(), c));
        return tp->of_terms(std::move(terms));
    }
    if (sd.kind == K::FractionField) {
        auto sf = std::dynamic_pointer_cast<const FractionFieldRing>(x.ring_ptr());
        if (sf->is_integral(x)) return reduce_elem(target, sf->integral_part(x));
        // denominator may still be invertible after reduction
        Elem rn = reduce_elem(target, FractionFieldRing::num(x));
        Elem rd = reduce_elem(target, FractionFieldRing::den(x));
        return target->exact_div(rn, rd);
    }
    throw no_lift_declared("no reduction from " + x.ring().to_string_name() + " onto " + target->to_string_name());
}

// Canonical preimage with coefficients in [0, p^l) (resp. [0, N)).
inline Elem lift_elem(const RingPtr& lift, const Elem& y) {
    const auto& sd = y.ring().descriptor();
    const auto& td = lift->descriptor();
    if (sd == td) return y;
    using K = RingDescriptor::Kind;
    if (sd.kind == K::Modular && (td.kind == K::Integers || td.kind == K::PLocalRationals))
        return lift->from_integer(ModularRing::val(y));
    if (sd.kind == K::CyclotomicQuotient && td.kind == K::CyclotomicLift && td.p == sd.p && td.l == sd.l) {
        auto lr = std::static_pointer_cast<const CyclotomicLiftRing>(lift);
        const auto& src = CyclotomicQuotientRing::val(y);
        detail::QPoly coeffs(src.begin(), src.end());
        return lr->of(coeffs);
    }
    if (sd.kind == K::PolynomialExtension && td.kind == K::PolynomialExtension && td.vars == sd.vars) {
        auto tp = std::static_pointer_cast<const PolynomialRing>(lift);
        std::map<Monomial, Elem> terms;
        for (const auto& [m, c] : PolynomialRing::val(y).terms) terms.emplace(m, lift_elem(tp->base(), c));
        return tp->of_terms(std::move(terms));
    }
    throw no_lift_declared("no lift from " + y.ring().to_string_name() + " into " + lift->to_string_name());
}

// Evaluate a polynomial at the given values (one per variable), mapping each
// coefficient through coeff_map into the values' ring.
inline Elem poly_evaluate(const Elem& poly, const std::vector<Elem>& values,
                          const std::function<Elem(const Elem&)>& coeff_map) {
    auto pr = std::dynamic_pointer_cast<const PolynomialRing>(poly.ring_ptr());
    if (!pr) throw invalid_descriptor("poly_evaluate: not a polynomial element");
    if (values.size() != pr->nvars()) throw invalid_descriptor("poly_evaluate: arity mismatch");
    const RingPtr& target = values.empty() ? poly.ring_ptr() : values.front().ring_ptr();
    // power cache per variable
    std::vector<std::vector<Elem>> pows(values.size());
    auto power = [&](size_t i, std::uint32_t e) -> Elem {
        auto& cache = pows[i];
        if (cache.empty()) cache.push_back(target->one());
        while (cache.size() <= e) cache.push_back(target->mul(cache.back(), values[i]));
        return cache[e];
    };
    Elem acc = target->zero();
    for (const auto& [m, c] : PolynomialRing::val(poly).terms) {
        Elem t = coeff_map(c);
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i]) t = target->mul(t, power(i, m[i]));
        }
        acc = target->add(acc, t);
    }
    return acc;
}

inline Elem poly_evaluate(const Elem& poly, const std::vector<Elem>& values) {
    const RingPtr target = values.empty() ? poly.ring_ptr() : values.front().ring_ptr();
    return poly_evaluate(poly, values, [&](const Elem& c) { return embed(target, c); });
}

}  // namespace wittlab
