#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "wittlab/rings_basic.hpp"

namespace wittlab {

namespace detail {

// Dense univariate polynomials over Q, little-endian coefficients.
using QPoly = std::vector<mpq_class>;

inline void qp_trim(QPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline QPoly qp_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    qp_trim(r);
    return r;
}

inline QPoly qp_sub(QPoly a, const QPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), mpq_class(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    qp_trim(a);
    return a;
}

// a mod b, b nonzero.
inline QPoly qp_rem(QPoly a, const QPoly& b) {
    qp_trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        mpq_class c = a.back() / b.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        qp_trim(a);
    }
    return a;
}

// Inverse of f modulo the monic polynomial m, when gcd(f, m) = 1 over Q.
inline bool qp_invert_mod(const QPoly& f, const QPoly& m, QPoly& out) {
    // extended Euclid: r0 = m, r1 = f
    QPoly r0 = m, r1 = f, t0 = {}, t1 = {mpq_class(1)};
    qp_trim(r1);
    while (!r1.empty()) {
        // quotient of r0 by r1
        QPoly q;
        QPoly rem = r0;
        qp_trim(rem);
        if (rem.size() >= r1.size()) {
            q.assign(rem.size() - r1.size() + 1, mpq_class(0));
            while (rem.size() >= r1.size() && !rem.empty()) {
                mpq_class c = rem.back() / r1.back();
                size_t shift = rem.size() - r1.size();
                q[shift] += c;
                for (size_t i = 0; i < r1.size(); ++i) rem[shift + i] -= c * r1[i];
                qp_trim(rem);
            }
            qp_trim(q);
        }
        QPoly r2 = rem;
        QPoly t2 = qp_sub(t0, qp_mul(q, t1));
        r0 = std::move(r1);
        r1 = std::move(r2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.size() != 1) return false;  // gcd not a unit
    mpq_class inv_g = 1 / r0[0];
    out = t0;
    for (auto& c : out) c *= inv_g;
    qp_trim(out);
    return true;
}

// Phi_{p^l}(Z) = sum_{j=0}^{p-1} Z^{j p^{l-1}}, degree p^{l-1}(p-1).
inline std::vector<mpz_class> cyclotomic_prime_power(unsigned p, unsigned l) {
    unsigned long step = 1;
    for (unsigned i = 1; i < l; ++i) step *= p;
    std::vector<mpz_class> phi(step * (p - 1) + 1, mpz_class(0));
    for (unsigned j = 0; j < p; ++j) phi[j * step] = 1;
    return phi;
}

inline std::string cyclo_term_string(const std::string& c, unsigned i, bool first) {
    std::string s;
    if (!first) s += " + ";
    if (i == 0) return s + c;
    if (c != "1") s += c + "*";
    s += "z";
    if (i > 1) s += "^" + std::to_string(i);
    return s;
}

}  // namespace detail

// Z_(p)[zeta_{p^l}], presented as Z_(p)[Z]/(Phi_{p^l}(Z)). A discrete
// valuation ring with uniformizer lambda = 1 - zeta; p-torsion-free.
class CyclotomicLiftRing final : public Ring {
  public:
    CyclotomicLiftRing(unsigned p, unsigned l) : p_(p), l_(l) {
        if (!detail::is_prime(mpz_class(p))) throw invalid_descriptor("CyclotomicLift: p must be prime");
        if (l < 1) throw invalid_descriptor("CyclotomicLift: l must be >= 1");
        desc_ = RingDescriptor::cyclotomic_lift(p, l);
        auto phi = detail::cyclotomic_prime_power(p, l);
        deg_ = static_cast<unsigned>(phi.size() - 1);
        phi_.assign(phi.begin(), phi.end());
    }

    unsigned p() const { return p_; }
    unsigned level() const { return l_; }
    unsigned degree() const { return deg_; }

    static const std::vector<mpq_class>& val(const Elem& a) { return std::get<std::vector<mpq_class>>(a.payload().v); }

    Elem zero() const override { return make_vec(std::vector<mpq_class>(deg_, mpq_class(0))); }
    Elem one() const override {
        std::vector<mpq_class> v(deg_, mpq_class(0));
        v[0] = 1;
        return make_vec(std::move(v));
    }
    Elem from_integer(const mpz_class& n) const override {
        std::vector<mpq_class> v(deg_, mpq_class(0));
        v[0] = mpq_class(n);
        return make_vec(std::move(v));
    }
    // Element from coefficients of a polynomial in zeta (any length).
    Elem of(const detail::QPoly& coeffs) const {
        detail::QPoly r = detail::qp_rem(coeffs, phi_);
        r.resize(deg_, mpq_class(0));
        for (auto& c : r) {
            c.canonicalize();
            if (mpz_divisible_ui_p(c.get_den().get_mpz_t(), p_)) throw invalid_descriptor("coefficient not p-local in cyclotomic lift");
        }
        return make_vec(std::move(r));
    }
    Elem zeta() const {
        detail::QPoly z{mpq_class(0), mpq_class(1)};
        return of(z);
    }
    Elem lambda() const {
        detail::QPoly z{mpq_class(1), mpq_class(-1)};
        return of(z);
    }

    Elem add(const Elem& a, const Elem& b) const override {
        check_same(*this, a);
        check_same(*this, b);
        std::vector<mpq_class> r = val(a);
        const auto& y = val(b);
        for (unsigned i = 0; i < deg_; ++i) r[i] += y[i];
        return make_vec(std::move(r));
    }
    Elem neg(const Elem& a) const override {
        check_same(*this, a);
        std::vector<mpq_class> r = val(a);
        for (auto& c : r) c = -c;
        return make_vec(std::move(r));
    }
    Elem mul(const Elem& a, const Elem& b) const override {
        check_same(*this, a);
        check_same(*this, b);
        detail::QPoly pa(val(a).begin(), val(a).end()), pb(val(b).begin(), val(b).end());
        detail::QPoly r = detail::qp_rem(detail::qp_mul(pa, pb), phi_);
        r.resize(deg_, mpq_class(0));
        return make_vec(std::move(r));
    }
    DivOutcome try_divide(const Elem& x, const Elem& y) const override {
        check_same(*this, x);
        check_same(*this, y);
        if (is_zero_elem(y)) return is_zero_elem(x) ? DivOutcome::ambiguous() : DivOutcome::none();
        detail::QPoly py(val(y).begin(), val(y).end());
        detail::qp_trim(py);
        detail::QPoly inv;
        if (!detail::qp_invert_mod(py, phi_, inv)) return DivOutcome::none();  // Phi irreducible: cannot happen for y != 0
        detail::QPoly px(val(x).begin(), val(x).end());
        detail::QPoly q = detail::qp_rem(detail::qp_mul(px, inv), phi_);
        q.resize(deg_, mpq_class(0));
        for (auto& c : q) {
            c.canonicalize();
            if (mpz_divisible_ui_p(c.get_den().get_mpz_t(), p_)) return DivOutcome::none();
        }
        return DivOutcome::ok(make_vec(std::move(q)));
    }
    bool is_zero_elem(const Elem& a) const override {
        for (const auto& c : val(a))
            if (c != 0) return false;
        return true;
    }
    std::string to_string(const Elem& a) const override {
        std::string s;
        bool first = true;
        const auto& v = val(a);
        for (unsigned i = 0; i < deg_; ++i) {
            if (v[i] == 0) continue;
            s += detail::cyclo_term_string(v[i].get_str(), i, first);
            first = false;
        }
        return first ? "0" : s;
    }
    std::string to_string_name() const override {
        return "Z_(" + std::to_string(p_) + ")[zeta_" + std::to_string(ipow(p_, l_)) + "]";
    }

    // lambda-adic valuation; x must be nonzero.
    unsigned long lambda_valuation(const Elem& x) const {
        unsigned long v = 0;
        Elem cur = x;
        const Elem lam = lambda();
        for (;;) {
            DivOutcome d = try_divide(cur, lam);
            if (d.status != DivOutcome::Status::Ok) return v;
            cur = d.quotient;
            ++v;
        }
    }

    Elem gcd(const Elem& a, const Elem& b) const override {
        if (is_zero_elem(a)) return b;
        if (is_zero_elem(b)) return a;
        unsigned long v = std::min(lambda_valuation(a), lambda_valuation(b));
        return lambda().pow(v);
    }
    Elem canonical_unit(const Elem& a) const override {
        if (is_zero_elem(a)) return one();
        return exact_div(a, lambda().pow(lambda_valuation(a)));
    }
    std::optional<Elem> try_invert(const Elem& a) const override {
        if (is_zero_elem(a)) return std::nullopt;
        DivOutcome d = try_divide(one(), a);
        if (d.status == DivOutcome::Status::Ok) return d.quotient;
        return std::nullopt;
    }

    static unsigned long ipow(unsigned b, unsigned e) {
        unsigned long r = 1;
        while (e--) r *= b;
        return r;
    }

  private:
    Elem make_vec(std::vector<mpq_class>&& v) const { return make({std::move(v)}); }
    unsigned p_, l_, deg_;
    detail::QPoly phi_;
};

// Z[Z]/(Phi_{p^l}(Z), p^l): finite of order p^{l * deg Phi}.
class CyclotomicQuotientRing final : public Ring {
  public:
    CyclotomicQuotientRing(unsigned p, unsigned l) : p_(p), l_(l) {
        if (!detail::is_prime(mpz_class(p))) throw invalid_descriptor("CyclotomicQuotient: p must be prime");
        if (l < 1) throw invalid_descriptor("CyclotomicQuotient: l must be >= 1");
        desc_ = RingDescriptor::cyclotomic_quotient(p, l);
        phi_ = detail::cyclotomic_prime_power(p, l);
        deg_ = static_cast<unsigned>(phi_.size() - 1);
        mpz_ui_pow_ui(pl_.get_mpz_t(), p, l);
        mpz_class c;
        mpz_pow_ui(c.get_mpz_t(), pl_.get_mpz_t(), deg_);
        card_ = c;
    }

    unsigned p() const { return p_; }
    unsigned level() const { return l_; }
    unsigned degree() const { return deg_; }
    const mpz_class& char_modulus() const { return pl_; }

    static const std::vector<mpz_class>& val(const Elem& a) { return std::get<std::vector<mpz_class>>(a.payload().v); }

    Elem zero() const override { return make_vec(std::vector<mpz_class>(deg_, mpz_class(0))); }
    Elem one() const override {
        std::vector<mpz_class> v(deg_, mpz_class(0));
        v[0] = 1;
        return make_vec(std::move(v));
    }
    Elem from_integer(const mpz_class& n) const override {
        std::vector<mpz_class> v(deg_, mpz_class(0));
        mpz_fdiv_r(v[0].get_mpz_t(), n.get_mpz_t(), pl_.get_mpz_t());
        return make_vec(std::move(v));
    }
    Elem of(std::vector<mpz_class> coeffs) const {
        reduce_mod_phi(coeffs);
        return make_vec(std::move(coeffs));
    }
    Elem zeta() const {
        std::vector<mpz_class> v(deg_, mpz_class(0));
        (deg_ >= 2 ? v[1] : v[0]) = 1;  // deg 1 only for p = 2, l = 1 where zeta = -1
        if (deg_ == 1) v[0] = pl_ - 1;
        return make_vec(std::move(v));
    }
    Elem lambda() const { return add(one(), neg(zeta())); }

    Elem add(const Elem& a, const Elem& b) const override {
        check_same(*this, a);
        check_same(*this, b);
        std::vector<mpz_class> r = val(a);
        const auto& y = val(b);
        for (unsigned i = 0; i < deg_; ++i) {
            r[i] += y[i];
            if (r[i] >= pl_) r[i] -= pl_;
        }
        return make_vec(std::move(r));
    }
    Elem neg(const Elem& a) const override {
        check_same(*this, a);
        std::vector<mpz_class> r = val(a);
        for (auto& c : r)
            if (c != 0) c = pl_ - c;
        return make_vec(std::move(r));
    }
    Elem mul(const Elem& a, const Elem& b) const override {
        check_same(*this, a);
        check_same(*this, b);
        std::vector<mpz_class> r(2 * deg_ - 1, mpz_class(0));
        const auto& x = val(a);
        const auto& y = val(b);
        for (unsigned i = 0; i < deg_; ++i) {
            if (x[i] == 0) continue;
            for (unsigned j = 0; j < deg_; ++j) r[i + j] += x[i] * y[j];
        }
        reduce_mod_phi(r);
        return make_vec(std::move(r));
    }
    DivOutcome try_divide(const Elem& x, const Elem& y) const override {
        check_same(*this, x);
        check_same(*this, y);
        if (auto inv = try_invert(y)) return DivOutcome::ok(mul(x, *inv));
        // y is a zero divisor or zero: enumerate candidate quotients.
        if (card_ > (1 << 22)) throw not_finite("division by enumeration too large in " + to_string_name());
        std::optional<Elem> found;
        for (mpz_class i = 0; i < card_; ++i) {
            Elem q = element_at(i);
            if (equal(mul(q, y), x)) {
                if (found) return DivOutcome::ambiguous();
                found = q;
            }
        }
        if (!found) return DivOutcome::none();
        return DivOutcome::ok(*found);
    }
    bool is_zero_elem(const Elem& a) const override {
        for (const auto& c : val(a))
            if (c != 0) return false;
        return true;
    }
    std::string to_string(const Elem& a) const override {
        std::string s;
        bool first = true;
        const auto& v = val(a);
        for (unsigned i = 0; i < deg_; ++i) {
            if (v[i] == 0) continue;
            s += detail::cyclo_term_string(v[i].get_str(), i, first);
            first = false;
        }
        return first ? "0" : s;
    }
    std::string to_string_name() const override {
        return "Z[zeta_" + std::to_string(CyclotomicLiftRing::ipow(p_, l_)) + "]/(" + pl_.get_str() + ")";
    }

    bool is_finite() const override { return true; }
    mpz_class cardinality() const override { return card_; }
    Elem element_at(const mpz_class& idx) const override {
        std::vector<mpz_class> v(deg_);
        mpz_class rest = idx;
        for (unsigned i = 0; i < deg_; ++i) {
            mpz_fdiv_qr(rest.get_mpz_t(), v[i].get_mpz_t(), rest.get_mpz_t(), pl_.get_mpz_t());
        }
        return make_vec(std::move(v));
    }

    bool is_domain() const override { return false; }
    std::optional<Elem> try_invert(const Elem& a) const override {
        // Invert the canonical lift over Q(zeta); a is a unit iff the result
        // reduces back with p-local coefficients.
        detail::QPoly pa(val(a).begin(), val(a).end());
        detail::qp_trim(pa);
        if (pa.empty()) return std::nullopt;
        detail::QPoly phiq(phi_.begin(), phi_.end());
        detail::QPoly inv;
        if (!detail::qp_invert_mod(pa, phiq, inv)) return std::nullopt;
        inv.resize(deg_, mpq_class(0));
        std::vector<mpz_class> r(deg_);
        for (unsigned i = 0; i < deg_; ++i) {
            inv[i].canonicalize();
            mpz_class deninv;
            if (!mpz_invert(deninv.get_mpz_t(), inv[i].get_den().get_mpz_t(), pl_.get_mpz_t())) return std::nullopt;
            r[i] = inv[i].get_num() * deninv;
            mpz_fdiv_r(r[i].get_mpz_t(), r[i].get_mpz_t(), pl_.get_mpz_t());
        }
        Elem cand = make_vec(std::move(r));
        if (!equal(mul(cand, a), one())) return std::nullopt;
        return cand;
    }

  private:
    Elem make_vec(std::vector<mpz_class>&& v) const { return make({std::move(v)}); }

    void reduce_mod_phi(std::vector<mpz_class>& r) const {
        while (r.size() > deg_) {
            mpz_class c = r.back();
            size_t shift = r.size() - phi_.size();
            if (c != 0) {
                for (size_t i = 0; i < phi_.size(); ++i) r[shift + i] -= c * phi_[i];
            }
            r.pop_back();
        }
        r.resize(deg_, mpz_class(0));
        for (auto& c : r) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), pl_.get_mpz_t());
    }

    unsigned p_, l_, deg_;
    std::vector<mpz_class> phi_;
    mpz_class pl_, card_;
};

}  // namespace wittlab
