#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wittlab/series.hpp"
#include "wittlab/witt.hpp"

namespace wittlab {

// Deformed exponential series. Every infinite product is truncated at the
// first factor contributing beyond the series order: factor k starts at
// degree p^k. Symbolic Witt vectors are zero-extended, so ghost components
// of F^{(lam)}v are computed through the exact shortcut
//   Phi_k(F^{(lam)} v) = Phi_{k+1}(v) - lam^{(p-1)p^k} Phi_k(v),
// valid for all k without universal polynomial tables.

inline Elem ghost_f_lambda(const WittVector& v, const Elem& lam, size_t k) {
    unsigned long e = 1;
    for (size_t j = 0; j < k; ++j) e *= v.p;
    return ghost_component(v, k + 1) - lam.pow(e * (v.p - 1)) * ghost_component(v, k);
}

struct SeriesCheck {
    bool ok = true;
    std::string detail;
};

inline std::string first_mismatch(const Series& a, const Series& b) {
    Series d = a - b;
    if (d.is_zero()) return "";
    const auto& [m, c] = *d.terms().begin();
    std::string s = "degree";
    for (auto e : m) s += " " + std::to_string(e);
    return s + ": difference " + c.str();
}

// exp(sum_{r>=0} S^{p^r}/p^r), the classical series; S must have zero
// constant term and coefficients in a ring containing the rationals.
inline Series artin_hasse_of(unsigned p, const Series& S) {
    Series arg = Series::zero(S.ring(), S.vars(), S.deg());
    mpz_class pr = 1;
    for (unsigned long d = 1; d <= S.deg(); d *= p) {
        arg = arg + S.pow(d).scaled(rational_in(S.ring(), mpq_class(1, pr)));
        pr *= p;
    }
    return arg.exp();
}

// E_p(X) over Z_(p): computed over Q, then certified p-integral coefficient
// by coefficient.
inline Series artin_hasse(unsigned p, unsigned deg) {
    auto q = make_ring(RingDescriptor::fraction_field(RingDescriptor::integers()));
    Series over_q = artin_hasse_of(p, Series::variable(q, {"X"}, deg, 0));
    auto zp = std::static_pointer_cast<const PLocalRationalRing>(make_ring(RingDescriptor::p_local(p)));
    auto qf = std::static_pointer_cast<const FractionFieldRing>(q);
    Series out(zp, over_q.vars(), deg);
    for (const auto& [m, c] : over_q.terms()) {
        mpq_class v(IntegerRing::val(FractionFieldRing::num(c)), IntegerRing::val(FractionFieldRing::den(c)));
        v.canonicalize();
        if (mpz_divisible_ui_p(v.get_den().get_mpz_t(), p))
            throw integrality_violation("coefficient " + v.get_str() + " of the classical series is not p-integral");
        out.set_coeff(m, zp->of(v));
    }
    return out;
}

// One deformed factor E_p(u, mu; S) for scalars u, mu of the coefficient
// field and a series S with zero constant term.
inline Series ep_one_param(unsigned p, const Elem& u, const Elem& mu, const Series& S) {
    const RingPtr& K = S.ring();
    if (!S.constant_term().is_zero()) throw bad_constant_term("deformed exponential argument needs zero constant term");
    if (mu.is_zero()) {
        // limit value E_p(uS): exp(sum u^{p^r} S^{p^r} / p^r)
        Series arg = Series::zero(K, S.vars(), S.deg());
        mpz_class pr = 1;
        unsigned long pw = 1;
        for (; pw <= S.deg(); pw *= p) {
            arg = arg + S.pow(pw).scaled(u.pow(pw) * rational_in(K, mpq_class(1, pr)));
            pr *= p;
        }
        return arg.exp();
    }
    Elem t = K->exact_div(u, mu);
    Series one = Series::one(K, S.vars(), S.deg());
    Series acc = (one + S.scaled(mu)).pow_elem(t);
    mpz_class pk = 1;
    Elem tprev = t;
    for (unsigned long pw = p; pw <= S.deg(); pw *= p) {
        pk *= p;
        Elem tk = tprev.pow(p);
        Elem expo = (tk - tprev) * rational_in(K, mpq_class(1, pk));
        acc = acc * (one + S.pow(pw).scaled(mu.pow(pw))).pow_elem(expo);
        tprev = tk;
    }
    return acc;
}

// E_p(v, lam; S) as the product of one-parameter factors.
inline Series ep_witt(const WittVector& v, const Elem& lam, const Series& S) {
    Series acc = Series::one(S.ring(), S.vars(), S.deg());
    unsigned long pw = 1;
    for (size_t k = 0; k < v.length() && pw <= S.deg(); ++k, pw *= v.p)
        acc = acc * ep_one_param(v.p, v.c[k], lam.pow(pw), S.pow(pw));
    return acc;
}

// Phantom form from explicit ghost components ghosts[n] = Phi_n(v):
// (1+lam S)^{Phi_0/lam} prod_k (1+lam^{p^k} S^{p^k})^{Phi_{k-1}(F^{(lam)}v)/(p^k lam^{p^k})},
// with Phi_{k-1}(F^{(lam)}v) = Phi_k(v) - lam^{(p-1)p^{k-1}} Phi_{k-1}(v).
inline Series ep_witt_phantom_ghosts(unsigned p, const std::vector<Elem>& ghosts, const Elem& lam, const Series& S) {
    const RingPtr& K = S.ring();
    Series one = Series::one(K, S.vars(), S.deg());
    Series acc = (one + S.scaled(lam)).pow_elem(K->exact_div(ghosts[0], lam));
    mpz_class pk = 1;
    size_t k = 0;
    unsigned long pkm1 = 1;
    for (unsigned long pw = p; pw <= S.deg(); pw *= p) {
        pk *= p;
        ++k;
        if (k >= ghosts.size()) throw length_mismatch("not enough ghost components for the phantom form");
        Elem num = ghosts[k] - lam.pow(pkm1 * (p - 1)) * ghosts[k - 1];
        Elem expo = K->exact_div(num, K->from_integer(pk) * lam.pow(pw));
        acc = acc * (one + S.pow(pw).scaled(lam.pow(pw))).pow_elem(expo);
        pkm1 = pw;
    }
    return acc;
}

inline size_t ghost_count_for(unsigned p, unsigned deg) {
    size_t n = 1;
    for (unsigned long pw = p; pw <= deg; pw *= p) ++n;
    return n;
}

// E_p(v, lam; S) in phantom form, v zero-extended.
inline Series ep_witt_phantom(const WittVector& v, const Elem& lam, const Series& S) {
    std::vector<Elem> ghosts;
    for (size_t n = 0; n < ghost_count_for(v.p, S.deg()); ++n) ghosts.push_back(ghost_component(v, n));
    return ep_witt_phantom_ghosts(v.p, ghosts, lam, S);
}

// Ghost components of T_a(x) from ghost components gx[n] = Phi_n(x):
// Phi_n(T_a x) = sum_k p^k a_k^{p^{n-k}} Phi_{n-k}(x).
inline std::vector<Elem> t_a_ghosts_from(const WittVector& a, const std::vector<Elem>& gx, size_t count) {
    const RingPtr& K = a.ring();
    std::vector<Elem> out;
    for (size_t n = 0; n < count && n < gx.size(); ++n) {
        Elem g = K->zero();
        mpz_class pk = 1;
        for (size_t k = 0; k <= n; ++k) {
            if (k < a.length()) {
                unsigned long e = 1;
                for (size_t j = 0; j + k < n; ++j) e *= a.p;
                g = g + K->from_integer(pk) * a.c[k].pow(e) * gx[n - k];
            }
            pk *= a.p;
        }
        out.push_back(g);
    }
    return out;
}

// Same for a zero-extended vector x.
inline std::vector<Elem> t_a_ghosts(const WittVector& a, const WittVector& x, size_t count) {
    std::vector<Elem> gx;
    for (size_t n = 0; n < count; ++n) gx.push_back(ghost_component(x, n));
    return t_a_ghosts_from(a, gx, count);
}

// F_p(v, lam; X, Y) with arbitrary series arguments in a shared frame; the
// exponent of factor k is ghosts[k-1] / (p^k lam^{p^k}) where ghosts[j] is
// Phi_j of the defining vector.
inline Series fp_cocycle_of(unsigned p, const std::vector<Elem>& ghosts, const Elem& lam, const Series& X,
                            const Series& Y) {
    const RingPtr& K = X.ring();
    Series one = Series::one(K, X.vars(), X.deg());
    Series Z = X + Y + (X * Y).scaled(lam);
    Series acc = one;
    mpz_class pk = 1;
    size_t k = 0;
    for (unsigned long pw = p; pw <= X.deg(); pw *= p) {
        pk *= p;
        ++k;
        if (k > ghosts.size()) break;
        Elem c = lam.pow(pw);
        Series num = (one + X.pow(pw).scaled(c)) * (one + Y.pow(pw).scaled(c));
        Series den = one + Z.pow(pw).scaled(c);
        Elem expo = K->exact_div(ghosts[k - 1], K->from_integer(pk) * c);
        acc = acc * (num * den.reciprocal()).pow_elem(expo);
    }
    return acc;
}

inline Series fp_cocycle(const WittVector& v, const Elem& lam, const Series& X, const Series& Y) {
    std::vector<Elem> ghosts;
    size_t kmax = 0;
    for (unsigned long pw = v.p; pw <= X.deg(); pw *= v.p) ++kmax;
    for (size_t j = 0; j < kmax; ++j) ghosts.push_back(ghost_component(v, j));
    return fp_cocycle_of(v.p, ghosts, lam, X, Y);
}

// E~_p(W, L2; E) = E^{W_0/L2} prod_r (E^{(p^r)})^{Phi_{r-1}(F^{(L2)}W)/(p^r L2^{p^r})}.
// efr[r] must be the twisted series E^{(p^r)} (efr[0] = E itself).
inline Series ep_tilde(const WittVector& W, const Elem& L2, const std::vector<Series>& efr) {
    const Series& E = efr.front();
    const RingPtr& K = E.ring();
    Series acc = E.pow_elem(K->exact_div(W.c[0], L2));
    mpz_class pr = 1;
    size_t r = 0;
    for (unsigned long pw = W.p; pw <= E.deg(); pw *= W.p) {
        pr *= W.p;
        ++r;
        if (r >= efr.size()) break;
        Elem expo = K->exact_div(ghost_f_lambda(W, L2, r - 1), K->from_integer(pr) * L2.pow(pw));
        acc = acc * efr[r].pow_elem(expo);
    }
    return acc;
}

// G_p with explicit ghost exponents: prod_k ((1+(E-1)^{p^k})/E^{(p^k)})^{ghosts[k-1]/(p^k L2^{p^k})}.
inline Series gp_series_of(unsigned p, const std::vector<Elem>& ghosts, const Elem& L2, const std::vector<Series>& efr) {
    const Series& E = efr.front();
    const RingPtr& K = E.ring();
    Series one = Series::one(K, E.vars(), E.deg());
    Series em1 = E - one;
    Series acc = one;
    mpz_class pk = 1;
    size_t k = 0;
    for (unsigned long pw = p; pw <= E.deg(); pw *= p) {
        pk *= p;
        ++k;
        if (k >= efr.size() || k > ghosts.size()) break;
        Series base = (one + em1.pow(pw)) * efr[k].reciprocal();
        Elem expo = K->exact_div(ghosts[k - 1], K->from_integer(pk) * L2.pow(pw));
        acc = acc * base.pow_elem(expo);
    }
    return acc;
}

inline Series gp_series(const WittVector& W, const Elem& L2, const std::vector<Series>& efr) {
    std::vector<Elem> ghosts;
    size_t kmax = 0;
    for (unsigned long pw = W.p; pw <= efr.front().deg(); pw *= W.p) ++kmax;
    for (size_t j = 0; j < kmax; ++j) ghosts.push_back(ghost_component(W, j));
    return gp_series_of(W.p, ghosts, L2, efr);
}

// E_p(U, L; X) over Frac(Z_(p)[U, L]); certifies that every X-coefficient is
// a genuine polynomial over the p-local rationals.
inline Series ep_two_param(unsigned p, unsigned deg) {
    auto base = make_ring(RingDescriptor::polynomial(RingDescriptor::p_local(p), {"U", "L"}));
    auto K = std::static_pointer_cast<const FractionFieldRing>(
        make_ring(RingDescriptor::fraction_field(base->descriptor())));
    auto pr = std::static_pointer_cast<const PolynomialRing>(base);
    Elem U = K->of(pr->variable(0)), L = K->of(pr->variable(1));
    Series X = Series::variable(K, {"X"}, deg, 0);
    Series s = ep_one_param(p, U, L, X);
    for (const auto& [m, c] : s.terms()) {
        if (!K->is_integral(c))
            throw integrality_violation("two-parameter deformed exponential: coefficient of X^" +
                                        std::to_string(m[0]) + " is " + c.str() + ", not polynomial over Z_(" +
                                        std::to_string(p) + ")");
    }
    return s;
}

// The chain rule for deformed exponentials, over the symbolic fraction field
// in L1, L2, U_0..U_{m-1}, W_0..W_{m-1}, with V = (1/L2) U and
// E = E_p(U, L1; X):
//   (i)  E~_p(W, L2; E) = E_p(T_V(W), L1; X)
//   (ii) G_p(F^{(L2)}W, L2; E) = E_p(W, L2; (E-1)/L2) / E~_p(W, L2; E)
// and their combination
//   (iii) E_p(W, L2; (E-1)/L2) = E_p(T_V(W), L1; X) * G_p(F^{(L2)}W, L2; E).
// Note the orientation of (iii): it is the only placement of G_p consistent
// with (i) and (ii), and the one the congruence proofs actually use.
inline SeriesCheck verify_identity_9(unsigned p, unsigned m, unsigned deg) {
    std::vector<std::string> names = {"L1", "L2"};
    for (unsigned i = 0; i < m; ++i) names.push_back("U" + std::to_string(i));
    for (unsigned i = 0; i < m; ++i) names.push_back("W" + std::to_string(i));
    auto base = std::static_pointer_cast<const PolynomialRing>(
        make_ring(RingDescriptor::polynomial(RingDescriptor::p_local(p), names)));
    auto K = std::static_pointer_cast<const FractionFieldRing>(
        make_ring(RingDescriptor::fraction_field(base->descriptor())));
    Elem L1 = K->of(base->variable(0)), L2 = K->of(base->variable(1));
    WittVector U{p, {}}, W{p, {}}, V{p, {}};
    for (unsigned i = 0; i < m; ++i) U.c.push_back(K->of(base->variable(2 + i)));
    for (unsigned i = 0; i < m; ++i) W.c.push_back(K->of(base->variable(2 + m + i)));
    for (unsigned i = 0; i < m; ++i) V.c.push_back(K->exact_div(U.c[i], L2));

    Series X = Series::variable(K, {"X"}, deg, 0);
    Series E = ep_witt(U, L1, X);

    // twisted family E^{(p^r)} = E_p(U^{(p^r)}, L1^{p^r}; X^{p^r})
    std::vector<Series> efr = {E};
    for (unsigned long pw = p; pw <= deg; pw *= p) {
        WittVector Ut{p, {}};
        for (unsigned i = 0; i < m; ++i) Ut.c.push_back(U.c[i].pow(pw));
        efr.push_back(ep_witt(Ut, L1.pow(pw), X.pow(pw)));
    }

    size_t gc = ghost_count_for(p, deg);
    Series e_tvw = ep_witt_phantom_ghosts(p, t_a_ghosts(V, W, gc), L1, X);
    Series e_tilde = ep_tilde(W, L2, efr);

    Series one = Series::one(K, X.vars(), deg);
    Series em1 = (E - one).scaled(K->exact_div(K->one(), L2));
    std::vector<Elem> fw_ghosts;
    for (size_t j = 0; j + 1 < gc; ++j) fw_ghosts.push_back(ghost_f_lambda(W, L2, j));
    Series gp = gp_series_of(p, fw_ghosts, L2, efr);
    Series e_w = ep_witt(W, L2, em1);

    if (std::string d = first_mismatch(e_tilde, e_tvw); !d.empty())
        return {false, "twisted-exponential identity fails at " + d};
    if (std::string d = first_mismatch(gp, e_w * e_tilde.reciprocal()); !d.empty())
        return {false, "correction-factor identity fails at " + d};
    if (std::string d = first_mismatch(e_w, e_tvw * gp); !d.empty())
        return {false, "combined chain identity fails at " + d};
    return {};
}

// Symmetry and the symmetric 2-cocycle identity
// F(Y,Z) F(X, Y*Z) = F(X,Y) F(X*Y, Z) with x*y = x+y+lam*xy, for a
// two-variable series F with constant term 1.
inline SeriesCheck cocycle_conditions(const Series& F, const Elem& lam) {
    const RingPtr& K = F.ring();
    unsigned deg = F.deg();
    if (!F.constant_term().is_one()) return {false, "constant term is " + F.constant_term().str() + ", not 1"};
    {
        Series x2 = Series::variable(K, F.vars(), deg, 0);
        Series y2 = Series::variable(K, F.vars(), deg, 1);
        if (F.substituted({y2, x2}) != F) return {false, "not symmetric in its two variables"};
    }
    std::vector<std::string> v3 = {"X", "Y", "Z"};
    Series X = Series::variable(K, v3, deg, 0);
    Series Y = Series::variable(K, v3, deg, 1);
    Series Z = Series::variable(K, v3, deg, 2);
    auto law = [&](const Series& a, const Series& b) { return a + b + (a * b).scaled(lam); };
    Series lhs = F.substituted({Y, Z}) * F.substituted({X, law(Y, Z)});
    Series rhs = F.substituted({X, Y}) * F.substituted({law(X, Y), Z});
    std::string d = first_mismatch(lhs, rhs);
    return {d.empty(), d.empty() ? "" : "cocycle identity fails at " + d};
}

}  // namespace wittlab
