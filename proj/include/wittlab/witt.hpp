#pragma once

#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "wittlab/rings.hpp"

namespace wittlab {

// p-typical Witt vector of finite length; all coordinates share one ring.
struct WittVector {
    unsigned p = 0;
    std::vector<Elem> c;

    size_t length() const { return c.size(); }
    const RingPtr& ring() const { return c.front().ring_ptr(); }

    friend bool operator==(const WittVector& a, const WittVector& b) {
        if (a.p != b.p || a.c.size() != b.c.size()) return false;
        for (size_t i = 0; i < a.c.size(); ++i)
            if (a.c[i] != b.c[i]) return false;
        return true;
    }
    std::string str() const {
        std::string s = "(";
        for (size_t i = 0; i < c.size(); ++i) s += (i ? ", " : "") + c[i].str();
        return s + ")";
    }
};

using GhostVector = std::vector<Elem>;

inline WittVector witt_zero(unsigned p, const RingPtr& r, size_t n) {
    return {p, std::vector<Elem>(n, r->zero())};
}

inline WittVector teichmuller(unsigned p, const Elem& lam, size_t n) {
    WittVector v = witt_zero(p, lam.ring_ptr(), n);
    v.c[0] = lam;
    return v;
}

inline WittVector truncate(const WittVector& x, size_t n) {
    if (n > x.length()) throw length_mismatch("cannot extend by truncation");
    return {x.p, std::vector<Elem>(x.c.begin(), x.c.begin() + n)};
}

// Phi_k of the zero-extended vector: sum_{i<=k} p^i x_i^{p^(k-i)}.
inline Elem ghost_component(const WittVector& x, size_t k) {
    const RingPtr& r = x.ring();
    Elem acc = r->zero();
    mpz_class pi = 1;
    for (size_t i = 0; i <= k; ++i) {
        if (i < x.length()) {
            unsigned long e = 1;
            for (size_t j = i; j < k; ++j) e *= x.p;
            acc = acc + r->from_integer(pi) * x.c[i].pow(e);
        }
        pi *= x.p;
    }
    return acc;
}

inline GhostVector ghost(const WittVector& x) {
    GhostVector w;
    w.reserve(x.length());
    for (size_t k = 0; k < x.length(); ++k) w.push_back(ghost_component(x, k));
    return w;
}

// Invert the phantom map over a p-torsion-free ring; throws not_integral when
// w is not the ghost of any vector.
inline WittVector ghost_invert(unsigned p, const GhostVector& w) {
    if (w.empty()) throw length_mismatch("empty ghost vector");
    const RingPtr& r = w.front().ring_ptr();
    WittVector x{p, {}};
    mpz_class pk = 1;
    for (size_t k = 0; k < w.size(); ++k) {
        Elem rest = r->zero();
        mpz_class pi = 1;
        for (size_t i = 0; i < k; ++i) {
            unsigned long e = 1;
            for (size_t j = i; j < k; ++j) e *= p;
            rest = rest + r->from_integer(pi) * x.c[i].pow(e);
            pi *= p;
        }
        DivOutcome d = r->try_divide(w[k] - rest, r->from_integer(pk));
        if (d.status != DivOutcome::Status::Ok)
            throw not_integral("ghost inversion: division by p^" + std::to_string(k) + " failed");
        x.c.push_back(d.quotient);
        pk *= p;
    }
    return x;
}

enum class WittOp { Sum, Product, Neg, Frobenius, Ta };

inline const char* witt_op_name(WittOp op) {
    switch (op) {
        case WittOp::Sum: return "sum";
        case WittOp::Product: return "product";
        case WittOp::Neg: return "neg";
        case WittOp::Frobenius: return "frobenius";
        case WittOp::Ta: return "t_a";
    }
    return "?";
}

inline unsigned witt_depth_limit(unsigned p) { return p == 2 ? 5u : p == 3 ? 4u : 3u; }

// Universal integer polynomial tables defining the Witt operations, obtained
// once by ghost inversion over Z[vars] and cached. Single writer during
// construction, immutable afterwards.
class StructurePolynomials {
  public:
    static StructurePolynomials& instance() {
        static StructurePolynomials s;
        return s;
    }

    // Polynomials for output indices 0..depth-1.
    std::vector<Elem> table(unsigned p, WittOp op, unsigned depth) {
        if (depth == 0) throw length_mismatch("table depth must be >= 1");
        if (depth > witt_depth_limit(p))
            throw invalid_descriptor("structure polynomial depth " + std::to_string(depth) +
                                     " exceeds limit for p=" + std::to_string(p));
        std::lock_guard<std::mutex> lock(mu_);
        auto& slot = cache_[{p, static_cast<int>(op)}];
        if (slot.first < depth) slot = {depth, build(p, op, depth)};
        return std::vector<Elem>(slot.second.begin(), slot.second.begin() + depth);
    }

    // Inject a precomputed table (used by the cache loader); verified against
    // the ghost identities before acceptance.
    void install(unsigned p, WittOp op, std::vector<Elem> polys) {
        std::lock_guard<std::mutex> lock(mu_);
        auto& slot = cache_[{p, static_cast<int>(op)}];
        if (slot.first < polys.size()) slot = {static_cast<unsigned>(polys.size()), std::move(polys)};
    }

    static std::vector<std::string> var_names(WittOp op, unsigned depth) {
        std::vector<std::string> vars;
        auto push = [&](const char* stem, unsigned n) {
            for (unsigned i = 0; i < n; ++i) vars.push_back(stem + std::to_string(i));
        };
        switch (op) {
            case WittOp::Sum:
            case WittOp::Product:
                push("X", depth);
                push("Y", depth);
                break;
            case WittOp::Neg: push("X", depth); break;
            case WittOp::Frobenius: push("X", depth + 1); break;
            case WittOp::Ta:
                push("a", depth);
                push("x", depth);
                break;
        }
        return vars;
    }

    static std::vector<Elem> build(unsigned p, WittOp op, unsigned depth) {
        auto pr = std::static_pointer_cast<const PolynomialRing>(
            make_ring(RingDescriptor::polynomial(RingDescriptor::integers(), var_names(op, depth))));
        auto var_vec = [&](unsigned offset, unsigned n) {
            WittVector v{p, {}};
            for (unsigned i = 0; i < n; ++i) v.c.push_back(pr->variable(offset + i));
            return v;
        };
        GhostVector targets;
        switch (op) {
            case WittOp::Sum:
            case WittOp::Product: {
                WittVector X = var_vec(0, depth), Y = var_vec(depth, depth);
                for (unsigned k = 0; k < depth; ++k) {
                    Elem gx = ghost_component(X, k), gy = ghost_component(Y, k);
                    targets.push_back(op == WittOp::Sum ? gx + gy : gx * gy);
                }
                break;
            }
            case WittOp::Neg: {
                WittVector X = var_vec(0, depth);
                for (unsigned k = 0; k < depth; ++k) targets.push_back(-ghost_component(X, k));
                break;
            }
            case WittOp::Frobenius: {
                WittVector X = var_vec(0, depth + 1);
                for (unsigned k = 0; k < depth; ++k) targets.push_back(ghost_component(X, k + 1));
                break;
            }
            case WittOp::Ta: {
                WittVector a = var_vec(0, depth), x = var_vec(depth, depth);
                for (unsigned k = 0; k < depth; ++k) {
                    Elem g = pr->zero();
                    mpz_class pi = 1;
                    for (unsigned i = 0; i <= k; ++i) {
                        unsigned long e = 1;
                        for (unsigned j = 0; j + i < k; ++j) e *= p;
                        g = g + pr->from_integer(pi) * a.c[i].pow(e) * ghost_component(x, k - i);
                        pi *= p;
                    }
                    targets.push_back(g);
                }
                break;
            }
        }
        return ghost_invert(p, targets).c;
    }

    StructurePolynomials(const StructurePolynomials&) = delete;

  private:
    StructurePolynomials() = default;

    std::mutex mu_;
    std::map<std::pair<unsigned, int>, std::pair<unsigned, std::vector<Elem>>> cache_;
};

namespace detail {

inline Elem eval_table_poly(const Elem& poly, const std::vector<Elem>& values, const RingPtr& target) {
    auto pr = std::static_pointer_cast<const PolynomialRing>(poly.ring_ptr());
    std::vector<Elem> padded = values;
    while (padded.size() < pr->nvars()) padded.push_back(target->zero());
    return poly_evaluate(poly, padded, [&](const Elem& c) { return target->from_integer(IntegerRing::val(c)); });
}

inline void check_pair(const WittVector& x, const WittVector& y) {
    if (x.p != y.p) throw ring_mismatch("different primes");
    if (x.length() != y.length()) throw length_mismatch();
    if (!x.ring()->same(*y.ring())) throw ring_mismatch();
}

}  // namespace detail

inline WittVector witt_add(const WittVector& x, const WittVector& y) {
    detail::check_pair(x, y);
    auto polys = StructurePolynomials::instance().table(x.p, WittOp::Sum, static_cast<unsigned>(x.length()));
    std::vector<Elem> vals = x.c;
    vals.insert(vals.end(), y.c.begin(), y.c.end());
    // variable layout is X0..Xd-1 then Y0..Yd-1 at the table's own depth
    auto pr = std::static_pointer_cast<const PolynomialRing>(polys[0].ring_ptr());
    unsigned d = static_cast<unsigned>(pr->nvars() / 2);
    std::vector<Elem> layout;
    layout.reserve(2 * d);
    for (unsigned i = 0; i < d; ++i) layout.push_back(i < x.length() ? x.c[i] : x.ring()->zero());
    for (unsigned i = 0; i < d; ++i) layout.push_back(i < y.length() ? y.c[i] : x.ring()->zero());
    WittVector r{x.p, {}};
    for (size_t i = 0; i < x.length(); ++i) r.c.push_back(detail::eval_table_poly(polys[i], layout, x.ring()));
    return r;
}

inline WittVector witt_mul(const WittVector& x, const WittVector& y) {
    detail::check_pair(x, y);
    auto polys = StructurePolynomials::instance().table(x.p, WittOp::Product, static_cast<unsigned>(x.length()));
    auto pr = std::static_pointer_cast<const PolynomialRing>(polys[0].ring_ptr());
    unsigned d = static_cast<unsigned>(pr->nvars() / 2);
    std::vector<Elem> layout;
    layout.reserve(2 * d);
    for (unsigned i = 0; i < d; ++i) layout.push_back(i < x.length() ? x.c[i] : x.ring()->zero());
    for (unsigned i = 0; i < d; ++i) layout.push_back(i < y.length() ? y.c[i] : x.ring()->zero());
    WittVector r{x.p, {}};
    for (size_t i = 0; i < x.length(); ++i) r.c.push_back(detail::eval_table_poly(polys[i], layout, x.ring()));
    return r;
}

inline WittVector witt_neg(const WittVector& x) {
    auto polys = StructurePolynomials::instance().table(x.p, WittOp::Neg, static_cast<unsigned>(x.length()));
    WittVector r{x.p, {}};
    for (size_t i = 0; i < x.length(); ++i) r.c.push_back(detail::eval_table_poly(polys[i], x.c, x.ring()));
    return r;
}

inline WittVector witt_sub(const WittVector& x, const WittVector& y) { return witt_add(x, witt_neg(y)); }

inline bool witt_is_zero(const WittVector& x) {
    for (const auto& e : x.c)
        if (!e.is_zero()) return false;
    return true;
}

// F: length n+1 -> n, Phi_i(F(x)) = Phi_{i+1}(x).
inline WittVector frobenius(const WittVector& x) {
    if (x.length() < 2) throw length_mismatch("frobenius needs length >= 2");
    unsigned d = static_cast<unsigned>(x.length() - 1);
    auto polys = StructurePolynomials::instance().table(x.p, WittOp::Frobenius, d);
    WittVector r{x.p, {}};
    for (unsigned i = 0; i < d; ++i) r.c.push_back(detail::eval_table_poly(polys[i], x.c, x.ring()));
    return r;
}

// The coordinatewise p-power Frobenius; only valid over F_p-algebras, where
// it preserves length.
inline WittVector frobenius_charp(const WittVector& x) {
    if (!x.ring()->from_integer(x.p).is_zero()) throw ring_mismatch("frobenius_charp requires an F_p-algebra");
    WittVector r{x.p, {}};
    for (const auto& e : x.c) r.c.push_back(e.pow(x.p));
    return r;
}

inline WittVector verschiebung(const WittVector& x) {
    WittVector r = witt_zero(x.p, x.ring(), x.length());
    for (size_t i = 1; i < x.length(); ++i) r.c[i] = x.c[i - 1];
    return r;
}

// [lam] * x has coordinates lam^{p^i} x_i.
inline WittVector teich_scale(const Elem& lam, const WittVector& x) {
    WittVector r{x.p, {}};
    unsigned long e = 1;
    for (size_t i = 0; i < x.length(); ++i) {
        r.c.push_back(lam.pow(e) * x.c[i]);
        e *= x.p;
    }
    return r;
}

// F^(lam) = F - [lam^(p-1)]: length n+1 -> n.
inline WittVector f_lambda(const WittVector& x, const Elem& lam) {
    WittVector fx = frobenius(x);
    WittVector tx = teich_scale(lam.pow(x.p - 1), truncate(x, x.length() - 1));
    return witt_sub(fx, tx);
}

// Same-length char-p variant used for the W_{l,A} regression checks.
inline WittVector f_lambda_charp(const WittVector& x, const Elem& lam) {
    return witt_sub(frobenius_charp(x), teich_scale(lam.pow(x.p - 1), x));
}

// T_a, ghost action Phi_n(T_a(x)) = sum_k p^k a_k^{p^{n-k}} Phi_{n-k}(x).
inline WittVector t_a(const WittVector& a, const WittVector& x) {
    if (a.p != x.p) throw ring_mismatch("different primes");
    if (a.length() < x.length()) throw length_mismatch("T_a needs length(a) >= length(x)");
    if (!a.ring()->same(*x.ring())) throw ring_mismatch();
    unsigned d = static_cast<unsigned>(x.length());
    auto polys = StructurePolynomials::instance().table(x.p, WittOp::Ta, d);
    auto pr = std::static_pointer_cast<const PolynomialRing>(polys[0].ring_ptr());
    unsigned td = static_cast<unsigned>(pr->nvars() / 2);
    std::vector<Elem> layout;
    layout.reserve(2 * td);
    for (unsigned i = 0; i < td; ++i) layout.push_back(i < a.length() ? a.c[i] : x.ring()->zero());
    for (unsigned i = 0; i < td; ++i) layout.push_back(i < x.length() ? x.c[i] : x.ring()->zero());
    WittVector r{x.p, {}};
    for (unsigned i = 0; i < d; ++i) r.c.push_back(detail::eval_table_poly(polys[i], layout, x.ring()));
    return r;
}

// T'_a = F^(lam) o T_a: length n+1 -> n.
inline WittVector t_a_prime(const WittVector& a, const WittVector& x, const Elem& lam) {
    return f_lambda(t_a(a, x), lam);
}

// Integer scalar multiple via repeated Witt doubling.
inline WittVector witt_scalar(const mpz_class& k, const WittVector& x) {
    if (k == 0) return witt_zero(x.p, x.ring(), x.length());
    mpz_class n = k < 0 ? mpz_class(-k) : k;
    WittVector acc = witt_zero(x.p, x.ring(), x.length());
    WittVector base = x;
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) acc = witt_add(acc, base);
        n >>= 1;
        if (n > 0) base = witt_add(base, base);
    }
    return k < 0 ? witt_neg(acc) : acc;
}

// p^l [lam] over Z[lam]: the direct scalar computation, the closed form
// b_k = p^{l-k} lam^{p^k} alpha_k, and the mod-p congruences, all checked
// against one another.
struct PPowerTeichmuller {
    WittVector b;                   // over Z[lam]
    std::vector<mpq_class> alpha;   // alpha_1 .. alpha_{n-1} (p-local rationals)
    bool congruence_ok = false;     // b_k = lam^{p^l} (mod p) iff k = l, else 0 (mod p)
};

inline PPowerTeichmuller p_power_teichmuller(unsigned p, unsigned l, unsigned n) {
    if (n < 1) throw length_mismatch();
    auto pr = std::static_pointer_cast<const PolynomialRing>(
        make_ring(RingDescriptor::polynomial(RingDescriptor::integers(), {"lam"})));
    Elem lam = pr->variable(0);
    mpz_class pl;
    mpz_ui_pow_ui(pl.get_mpz_t(), p, l);
    WittVector direct = witt_scalar(pl, teichmuller(p, lam, n));

    auto p_pow = [&](long e) { return detail::q_pow_signed(p, e); };
    std::vector<mpq_class> alpha(n, mpq_class(0));  // alpha[0] unused
    if (n > 1) alpha[1] = 1 - p_pow(static_cast<long>(p - 1) * l);
    for (unsigned k = 2; k < n; ++k) {
        unsigned long pk = 1;
        for (unsigned j = 0; j < k; ++j) pk *= p;
        mpq_class a = 1 - p_pow(static_cast<long>(pk - 1) * l);
        for (unsigned i = 1; i < k; ++i) {
            unsigned long pki = 1;
            for (unsigned j = 0; j < k - i; ++j) pki *= p;
            mpq_class term = p_pow(static_cast<long>(pki - 1) * (static_cast<long>(l) - static_cast<long>(i)));
            mpq_class apow = alpha[i];
            for (unsigned long j = 1; j < pki; ++j) apow *= alpha[i];
            a -= term * apow;
        }
        alpha[k] = a;
    }

    WittVector closed{p, {}};
    for (unsigned k = 0; k < n; ++k) {
        mpq_class coeff = (k == 0 ? mpq_class(1) : alpha[k]) * p_pow(static_cast<long>(l) - static_cast<long>(k));
        coeff.canonicalize();
        if (coeff.get_den() != 1) throw not_integral("closed-form coefficient not integral at k=" + std::to_string(k));
        unsigned long pk = 1;
        for (unsigned j = 0; j < k; ++j) pk *= p;
        closed.c.push_back(pr->from_integer(coeff.get_num()) * lam.pow(pk));
    }
    if (!(direct == closed))
        throw closed_form_mismatch("p^l [lam] scalar computation disagrees with the closed form (p=" +
                                   std::to_string(p) + ", l=" + std::to_string(l) + ")");

    // congruence: b_k = lam^{p^l} (mod p) if k = l, 0 (mod p) otherwise
    bool cong = true;
    unsigned long ppl = 1;
    for (unsigned j = 0; j < l; ++j) ppl *= p;
    for (unsigned k = 0; k < n; ++k) {
        Elem target = (k == l) ? lam.pow(ppl) : pr->zero();
        Elem diff = direct.c[k] - target;
        if (pr->try_divide(diff, pr->from_integer(p)).status != DivOutcome::Status::Ok) cong = false;
    }
    return {std::move(direct), std::move(alpha), cong};
}

}  // namespace wittlab
