#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wittlab/ahseries.hpp"
#include "wittlab/hopf.hpp"
#include "wittlab/report.hpp"

namespace wittlab {

// A finite base ring A with p^l = 0, its p-torsion-free lift, and the
// deformation parameter lambda given in the lift. All divisions by powers of
// p and lambda happen in the lift (or its fraction field) and are then
// reduced onto A.
struct DualityInstance {
    std::string name;
    unsigned p = 0;
    unsigned l = 0;
    RingPtr A;
    RingPtr lift;
    Elem lambda_lift;
    unsigned window = 3;  // Witt coordinates in: window -> window-1 maps
    unsigned order = 8;   // series order: degrees 0..order kept

    mpz_class pl_modulus() const {
        mpz_class m;
        mpz_ui_pow_ui(m.get_mpz_t(), p, l);
        return m;
    }
    unsigned long pl_ui() const { return pl_modulus().get_ui(); }
    Elem lambda_A() const { return reduce_elem(A, lambda_lift); }

    void validate() const {
        if (p < 2 || l < 1) throw config_error("instance needs a prime p and l >= 1");
        if (!A->from_integer(pl_modulus()).is_zero())
            throw config_error("p^l is not zero in " + A->to_string_name());
        if (lift->from_integer(pl_modulus()).is_zero())
            throw config_error("lift " + lift->to_string_name() + " has p-torsion");
        if (window < 2) throw config_error("window must be at least 2");
    }
};

// --- the vector a = lambda^{-p^l} p^l [lambda] -----------------------------

// Coordinates of p^l [lambda] over the lift, then the coordinatewise exact
// quotients a_k = (p^l [lambda])_k / lambda^{p^l}. Throws not_divisible with
// the failing coordinate when the standing divisibility assumption fails.
inline WittVector a_vector_lift(const DualityInstance& inst, size_t len) {
    if (inst.lambda_lift.is_zero())
        throw config_error("lambda = 0: a = lambda^{-p^l} p^l [lambda] is an undefined quotient of zero");
    WittVector b = witt_scalar(inst.pl_modulus(), teichmuller(inst.p, inst.lambda_lift, len));
    Elem d = inst.lambda_lift.pow(inst.pl_ui());
    WittVector a{inst.p, {}};
    for (size_t k = 0; k < len; ++k) {
        DivOutcome q = inst.lift->try_divide(b.c[k], d);
        if (q.status != DivOutcome::Status::Ok)
            throw not_divisible("coordinate " + std::to_string(k) + ": " + b.c[k].str() +
                                " is not divisible by lambda^(p^l) = " + d.str() + " in " +
                                inst.lift->to_string_name());
        a.c.push_back(q.quotient);
    }
    return a;
}

inline WittVector reduce_vector(const RingPtr& target, const WittVector& v) {
    WittVector r{v.p, {}};
    for (const auto& c : v.c) r.c.push_back(reduce_elem(target, c));
    return r;
}

inline WittVector lift_vector(const RingPtr& lift, const WittVector& v) {
    WittVector r{v.p, {}};
    for (const auto& c : v.c) r.c.push_back(lift_elem(lift, c));
    return r;
}

inline CheckResult check_divisibility(const DualityInstance& inst) {
    Stopwatch sw;
    CheckResult r{"check-divisibility", "Eq. (12) / standing assumption", false, "", 0};
    try {
        WittVector a = a_vector_lift(inst, inst.window);
        WittVector a_red = reduce_vector(inst.A, a);
        r.pass = true;
        r.evidence = "a over lift = " + a.str() + "; over A = " + a_red.str();
    } catch (const not_divisible& e) {
        r.evidence = e.what();
    } catch (const config_error& e) {
        r.evidence = e.what();
    }
    r.millis = sw.millis();
    return r;
}

// --- psi^(l) ----------------------------------------------------------------

// psi(X) = lambda^{-p^l} ((1+lambda X)^{p^l} - 1), coefficients computed in
// the lift and reduced onto A; for lambda = 0 this degenerates to X^{p^l}.
inline std::vector<Elem> psi_coefficients_lift(const DualityInstance& inst) {
    unsigned long n = inst.pl_ui();
    std::vector<Elem> c(n + 1, inst.lift->zero());
    if (inst.lambda_lift.is_zero()) {
        c[n] = inst.lift->one();
        return c;
    }
    Elem d = inst.lambda_lift.pow(n);
    mpz_class binom = 1;
    for (unsigned long k = 1; k <= n; ++k) {
        binom = binom * (n - k + 1) / k;
        Elem num = inst.lift->from_integer(binom) * inst.lambda_lift.pow(k);
        c[k] = inst.lift->exact_div(num, d);
    }
    return c;
}

inline std::vector<Elem> psi_polynomial(const DualityInstance& inst) {
    std::vector<Elem> out;
    for (const auto& c : psi_coefficients_lift(inst)) out.push_back(reduce_elem(inst.A, c));
    return out;
}

inline std::string poly_str(const std::vector<Elem>& c, const std::string& var) {
    std::string s;
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i].is_zero()) continue;
        if (!s.empty()) s += " + ";
        std::string cs = c[i].str();
        bool paren = cs.find(' ') != std::string::npos;
        if (i == 0)
            s += paren ? "(" + cs + ")" : cs;
        else
            s += (cs == "1" ? "" : (paren ? "(" + cs + ")" : cs) + "*") + var + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return s.empty() ? "0" : s;
}

// --- N_l as a Hopf algebra ---------------------------------------------------

inline CheckResult nl_hopf(const DualityInstance& inst) {
    Stopwatch sw;
    CheckResult r{"nl-hopf", "Section 4.2: N_l = Spec A[X]/(psi)", false, "", 0};
    try {
        std::vector<Elem> psi = psi_polynomial(inst);
        QuotientAlgebra Q(inst.A, psi);
        HopfChecks h = check_hopf(Q, inst.lambda_A(), inst.pl_ui());
        r.pass = h.ok() && h.rank == inst.pl_ui();
        r.evidence = "psi = " + poly_str(psi, "X") + "; rank " + std::to_string(h.rank) + " (expected " +
                     std::to_string(inst.pl_ui()) + "), generator " +
                     (h.nilpotency > 0 ? "nilpotency index " + std::to_string(h.nilpotency)
                                       : "not nilpotent (has an invertible component)") +
                     ", comultiplication well-defined " + std::to_string(h.delta_well_defined) + ", coassociative " +
                     std::to_string(h.coassociative) + ", counit " + std::to_string(h.counit_ok) + ", antipode " +
                     std::to_string(h.antipode_ok);
    } catch (const not_divisible& e) {
        r.evidence = e.what();
    }
    r.millis = sw.millis();
    return r;
}

// --- Lemma 1 ----------------------------------------------------------------

namespace detail {

inline std::string vec_key(const WittVector& v) {
    std::string s;
    for (const auto& c : v.c) s += c.str() + "|";
    return s;
}

// all Witt vectors of the given length over a finite ring, in element_at order
inline std::vector<WittVector> all_vectors(unsigned p, const RingPtr& A, size_t len, size_t cap = 1 << 20) {
    if (!A->is_finite()) throw not_finite(A->to_string_name());
    mpz_class card = A->cardinality();
    mpz_class total = 1;
    for (size_t i = 0; i < len; ++i) total *= card;
    if (total > static_cast<long>(cap)) throw not_finite("enumeration too large: " + total.get_str() + " vectors");
    std::vector<WittVector> out;
    out.reserve(total.get_ui());
    for (mpz_class idx = 0; idx < total; ++idx) {
        WittVector v{p, {}};
        mpz_class rem = idx;
        for (size_t i = 0; i < len; ++i) {
            mpz_class q, r;
            mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rem.get_mpz_t(), card.get_mpz_t());
            v.c.push_back(A->element_at(r));
            rem = q;
        }
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace detail

// Exhaustive kernel comparison Ker(F^{(lambda)} T_a) = Ker(F^{(lambda^{p^l})})
// over the vectors of W_window(A), plus constancy of F^{(lambda)} T_a on the
// fibers of F^{(lambda^{p^l})}. Both kernel conditions are evaluated on the
// zero-extension of each vector at a slightly deeper length: the statement
// lives in W(A), and the extra output coordinates are what separate the two
// kernels when lambda is nilpotent (at the bare window the first kernel is
// strictly larger).
inline size_t lemma1_depth(const DualityInstance& inst) {
    return std::min<size_t>(inst.window + inst.l, witt_depth_limit(inst.p));
}

inline CheckResult lemma1_kernels(const DualityInstance& inst) {
    Stopwatch sw;
    CheckResult r{"lemma1-kernels", "Lemma 1", false, "", 0};
    try {
        size_t depth = lemma1_depth(inst);
        WittVector aA = reduce_vector(inst.A, a_vector_lift(inst, depth));
        Elem lamA = inst.lambda_A();
        Elem lam_pl = lamA.pow(inst.pl_ui());
        auto vectors = detail::all_vectors(inst.p, inst.A, inst.window);
        for (auto& x : vectors)
            while (x.c.size() < depth) x.c.push_back(inst.A->zero());
        size_t ker1 = 0, ker2 = 0, both = 0;
        bool equal_sets = true;
        std::string counterexample;
        std::map<std::string, std::pair<std::string, std::string>> fibers;  // F^{mu} image -> (F T_a image, witness)
        bool fiber_constant = true;
        std::string fiber_counterexample;
        for (const auto& x : vectors) {
            WittVector u = f_lambda(t_a(aA, x), lamA);
            WittVector w = f_lambda(x, lam_pl);
            bool in1 = witt_is_zero(u), in2 = witt_is_zero(w);
            ker1 += in1;
            ker2 += in2;
            both += in1 && in2;
            if (in1 != in2 && equal_sets) {
                equal_sets = false;
                counterexample = x.str();
            }
            auto [it, inserted] = fibers.try_emplace(detail::vec_key(w), detail::vec_key(u), x.str());
            if (!inserted && it->second.first != detail::vec_key(u) && fiber_constant) {
                fiber_constant = false;
                fiber_counterexample = x.str() + " vs " + it->second.second;
            }
        }
        r.pass = equal_sets && fiber_constant;
        r.evidence = std::to_string(vectors.size()) + " vectors (zero-extended to length " + std::to_string(depth) +
                     "); |Ker F^(lambda) T_a| = " + std::to_string(ker1) +
                     ", |Ker F^(lambda^{p^l})| = " + std::to_string(ker2) + ", intersection " + std::to_string(both) +
                     (equal_sets ? "; kernels equal" : "; kernel mismatch at " + counterexample) +
                     (fiber_constant ? "; induced map on the image well defined"
                                     : "; fiber collision at " + fiber_counterexample);
    } catch (const not_divisible& e) {
        r.evidence = e.what();
    } catch (const config_error& e) {
        r.evidence = e.what();
    } catch (const not_finite& e) {
        r.evidence = e.what();
    }
    r.millis = sw.millis();
    return r;
}

// --- symbolic frames over the lift ------------------------------------------

struct SymbolicFrame {
    std::shared_ptr<const PolynomialRing> poly;
    std::shared_ptr<const FractionFieldRing> K;
    WittVector x;  // symbolic vector of the requested length
    Elem lam;      // lambda embedded in K
};

inline SymbolicFrame symbolic_frame(const DualityInstance& inst, unsigned len, const std::string& stem = "x") {
    std::vector<std::string> names;
    for (unsigned i = 0; i < len; ++i) names.push_back(stem + std::to_string(i));
    auto K = std::static_pointer_cast<const FractionFieldRing>(make_ring(
        RingDescriptor::fraction_field(RingDescriptor::polynomial(inst.lift->descriptor(), names))));
    auto poly = std::static_pointer_cast<const PolynomialRing>(K->base());
    SymbolicFrame f{poly, K, WittVector{inst.p, {}}, K->of(poly->constant(inst.lambda_lift))};
    for (unsigned i = 0; i < len; ++i) f.x.c.push_back(K->of(poly->variable(i)));
    return f;
}

// mod-p^l comparison with constructive witnesses: every coefficient of a - b
// must be a polynomial over the lift whose coefficients are exactly divisible
// by p^l.
inline SeriesCheck congruent_mod_pl(const DualityInstance& inst, const SymbolicFrame& f, const Series& a,
                                    const Series& b) {
    Series d = a - b;
    for (const auto& [m, c] : d.terms()) {
        std::string where = "degree";
        for (auto e : m) where += " " + std::to_string(e);
        if (!f.K->is_integral(c)) return {false, where + ": difference " + c.str() + " is not integral over the lift"};
        Elem ip = f.K->integral_part(c);
        for (const auto& [mm, cc] : PolynomialRing::val(ip).terms) {
            if (inst.lift->try_divide(cc, inst.lift->from_integer(inst.pl_modulus())).status !=
                DivOutcome::Status::Ok)
                return {false, where + ": coefficient " + cc.str() + " has no p^l witness"};
        }
    }
    return {};
}

// psi as a series in the symbolic frame, evaluated at the given argument.
inline Series psi_series(const DualityInstance& inst, const SymbolicFrame& f, const Series& S) {
    std::vector<Elem> psi = psi_coefficients_lift(inst);
    Series acc = Series::zero(S.ring(), S.vars(), S.deg());
    Series spow = Series::one(S.ring(), S.vars(), S.deg());
    for (size_t k = 0; k < psi.size(); ++k) {
        if (k > 0) spow = spow * S;
        if (!psi[k].is_zero()) acc = acc + spow.scaled(f.K->of(f.poly->constant(psi[k])));
    }
    return acc;
}

// --- ghost utilities over a symbolic frame -----------------------------------

// Ghost components of F^{(lam)} v from ghost components of v:
// Phi_{k-1}(F^{(lam)} v) = Phi_k(v) - lam^{(p-1)p^{k-1}} Phi_{k-1}(v).
inline std::vector<Elem> flam_ghosts(unsigned p, const std::vector<Elem>& g, const Elem& lam) {
    std::vector<Elem> out;
    unsigned long pkm1 = 1;
    for (size_t j = 0; j + 1 < g.size(); ++j) {
        out.push_back(g[j + 1] - lam.pow(pkm1 * (p - 1)) * g[j]);
        pkm1 *= p;
    }
    return out;
}

// Ghost components of a generic element of Ker F^{(lambda^{p^l})}: the kernel
// condition forces Phi_k = lambda^{p^l (p^k - 1)} Phi_0, with Phi_0 = s free.
inline std::vector<Elem> kernel_ghosts(const DualityInstance& inst, const SymbolicFrame& f, const Elem& s,
                                       size_t count) {
    std::vector<Elem> g;
    unsigned long pk = 1;
    for (size_t k = 0; k < count; ++k) {
        g.push_back(f.lam.pow(inst.pl_ui() * (pk - 1)) * s);
        pk *= inst.p;
    }
    return g;
}

inline WittVector a_in_frame(const DualityInstance& inst, const SymbolicFrame& f, size_t len) {
    WittVector aK{inst.p, {}};
    for (const auto& c : a_vector_lift(inst, len).c) aK.c.push_back(f.K->of(f.poly->constant(c)));
    return aK;
}

// --- Lemma 2 ----------------------------------------------------------------

// The congruence E_p(x, lambda^{p^l}; psi(X)) = E_p(T_a(x), lambda; X)
// (mod p^l) for x in Ker F^{(lambda^{p^l})}, the domain it is applied to.
// For unrestricted x the congruence is false: the discrepancy factor
// G_p(F^{(lambda^{p^l})}x, lambda^{p^l}; (1+lambda X)^{p^l}) is 1 mod p^l
// only when the F^{(lambda^{p^l})}-ghosts of x vanish.
inline CheckResult lemma2_congruence(const DualityInstance& inst) {
    Stopwatch sw;
    CheckResult r{"lemma2-congruence", "Lemma 2", false, "", 0};
    try {
        SymbolicFrame f = symbolic_frame(inst, 1, "s");
        unsigned deg = inst.order;
        Series X = Series::variable(f.K, {"X"}, deg, 0);
        size_t gc = ghost_count_for(inst.p, deg);
        WittVector aK = a_in_frame(inst, f, gc);

        // supporting identity: E_p(p^l [lambda], lambda; X) = (1+lambda X)^{p^l}
        {
            WittVector bK{inst.p, {}};
            for (const auto& c : witt_scalar(inst.pl_modulus(), teichmuller(inst.p, inst.lambda_lift, gc)).c)
                bK.c.push_back(f.K->of(f.poly->constant(c)));
            Series lhs = ep_witt(bK, f.lam, X);
            Series rhs = (Series::one(f.K, {"X"}, deg) + X.scaled(f.lam)).pow(inst.pl_ui());
            if (std::string d = first_mismatch(lhs, rhs); !d.empty()) {
                r.evidence = "supporting identity E_p(p^l[lambda],lambda;X) = (1+lambda X)^{p^l} fails at " + d;
                r.millis = sw.millis();
                return r;
            }
        }

        std::vector<Elem> gx = kernel_ghosts(inst, f, f.x.c[0], gc);
        Series lhs = ep_witt_phantom_ghosts(inst.p, gx, f.lam.pow(inst.pl_ui()), psi_series(inst, f, X));
        Series rhs = ep_witt_phantom_ghosts(inst.p, t_a_ghosts_from(aK, gx, gc), f.lam, X);
        SeriesCheck c = congruent_mod_pl(inst, f, lhs, rhs);
        r.pass = c.ok;
        r.evidence = c.ok ? "congruence holds mod p^l to order " + std::to_string(deg) +
                                " on generic kernel ghosts Phi_k = lambda^{p^l(p^k-1)} s; supporting identity exact"
                          : c.detail;
    } catch (const not_divisible& e) {
        r.evidence = e.what();
    } catch (const config_error& e) {
        r.evidence = e.what();
    }
    r.millis = sw.millis();
    return r;
}

// The unrestricted form of the Lemma 2 congruence, kept callable so the
// failure for free x stays pinned down by tests.
inline SeriesCheck lemma2_unrestricted(const DualityInstance& inst, unsigned sym_len = 2) {
    SymbolicFrame f = symbolic_frame(inst, sym_len);
    unsigned deg = inst.order;
    Series X = Series::variable(f.K, {"X"}, deg, 0);
    size_t gc = ghost_count_for(inst.p, deg);
    WittVector aK = a_in_frame(inst, f, gc);
    Series lhs = ep_witt(f.x, f.lam.pow(inst.pl_ui()), psi_series(inst, f, X));
    Series rhs = ep_witt_phantom_ghosts(inst.p, t_a_ghosts(aK, f.x, gc), f.lam, X);
    return congruent_mod_pl(inst, f, lhs, rhs);
}

// --- the pairing phi ---------------------------------------------------------

struct PairingContext {
    QuotientAlgebra Q;
    long nilpotency;  // of the generator
    unsigned deg;     // series degree used (nilpotency - 1)
};

inline PairingContext pairing_context(const DualityInstance& inst) {
    QuotientAlgebra Q(inst.A, psi_polynomial(inst));
    long D = Q.nilpotency_index(Q.gen());
    if (D < 1) throw not_integral("generator of A[t]/(psi) is not nilpotent");
    return {std::move(Q), D, static_cast<unsigned>(D - 1)};
}

// phi(x) = E_p(x~, lambda; t) reduced modulo (p^l, psi(t)): the series is
// computed over Frac(lift) at the lifted coordinates, reduced onto A
// coefficientwise, and folded at the nilpotent generator.
inline QuotientAlgebra::El pairing_phi(const DualityInstance& inst, const PairingContext& ctx, const WittVector& xA) {
    auto K = std::static_pointer_cast<const FractionFieldRing>(
        make_ring(RingDescriptor::fraction_field(inst.lift->descriptor())));
    WittVector xl{inst.p, {}};
    for (const auto& c : xA.c) xl.c.push_back(K->of(lift_elem(inst.lift, c)));
    Elem lamK = K->of(inst.lambda_lift);
    Series X = Series::variable(K, {"X"}, ctx.deg, 0);
    Series E = ep_witt(xl, lamK, X);
    QuotientAlgebra::El out = ctx.Q.zero();
    QuotientAlgebra::El tpow = ctx.Q.one();
    for (unsigned d = 0; d <= ctx.deg; ++d) {
        Elem cA = reduce_elem(inst.A, E.coeff({d}));
        if (!cA.is_zero()) out = ctx.Q.add(out, ctx.Q.scale(cA, tpow));
        if (d < ctx.deg) tpow = ctx.Q.mul(tpow, ctx.Q.gen());
    }
    return out;
}

// Symbolic well-definedness of phi on T_a-cosets. The coset shifts come from
// T_a applied to Ker F^{(lambda^{p^l})}, so x0 carries generic kernel ghosts
// while x stays free:
//   E_p(x + T_a(x0), lambda; X) = E_p(x, lambda; X) E_p(T_a(x0), lambda; X)   (exactly)
//                               = E_p(x, lambda; X) E_p(x0, lambda^{p^l}; psi(X))   (mod p^l),
// and the second factor lies in 1 + (psi(X)) by construction (it is a series
// composed with psi), so phi(x + T_a x0) = phi(x) modulo (p^l, psi(t)).
inline SeriesCheck pairing_well_definedness(const DualityInstance& inst, unsigned sym_len = 3) {
    SymbolicFrame f = symbolic_frame(inst, sym_len + 1);
    WittVector x{inst.p, std::vector<Elem>(f.x.c.begin(), f.x.c.begin() + sym_len)};
    Elem s = f.x.c[sym_len];
    unsigned deg = inst.order;
    Series X = Series::variable(f.K, {"X"}, deg, 0);
    size_t gc = ghost_count_for(inst.p, deg);
    WittVector aK = a_in_frame(inst, f, gc);
    std::vector<Elem> g0 = kernel_ghosts(inst, f, s, gc);
    // ghosts are additive, so Phi_n(x + T_a x0) = Phi_n(x) + Phi_n(T_a x0)
    std::vector<Elem> g = t_a_ghosts_from(aK, g0, gc);
    for (size_t n = 0; n < gc; ++n) g[n] = g[n] + ghost_component(x, n);
    Series lhs = ep_witt_phantom_ghosts(inst.p, g, f.lam, X);
    Series rhs = ep_witt(x, f.lam, X) * ep_witt_phantom_ghosts(inst.p, g0, f.lam.pow(inst.pl_ui()),
                                                               psi_series(inst, f, X));
    return congruent_mod_pl(inst, f, lhs, rhs);
}

// Evaluation-based checks for phi (needs a nilpotent generator): images of
// Ker F^{(lambda)} are group-like, phi is multiplicative, and phi is
// constant on T_a-cosets.
inline CheckResult pairing_checks(const DualityInstance& inst, size_t sample = 6) {
    Stopwatch sw;
    CheckResult r{"pairing-phi", "Theorem 3 pairing phi", false, "", 0};
    try {
        SeriesCheck wd = pairing_well_definedness(inst);
        if (!wd.ok) {
            r.evidence = "coset well-definedness congruence fails: " + wd.detail;
            r.millis = sw.millis();
            return r;
        }
        QuotientAlgebra Q(inst.A, psi_polynomial(inst));
        if (Q.nilpotency_index(Q.gen()) < 0) {
            // phi(x) is not a finite sum at a non-nilpotent generator; only
            // the symbolic coset congruence applies.
            r.pass = true;
            r.evidence = "symbolic coset well-definedness holds mod p^l to order " + std::to_string(inst.order) +
                         "; generator not nilpotent, so evaluation checks do not apply";
            r.millis = sw.millis();
            return r;
        }
        PairingContext ctx = pairing_context(inst);
        Elem lamA = inst.lambda_A();
        Elem lam_pl = lamA.pow(inst.pl_ui());
        size_t depth = lemma1_depth(inst);
        auto vectors = detail::all_vectors(inst.p, inst.A, inst.window);
        std::vector<WittVector> kernel;   // of F^{(lambda)}: W_window -> W_{window-1}
        std::vector<WittVector> kernel0;  // of F^{(lambda^{p^l})}, the coset-shift domain
        for (const auto& x : vectors) {
            if (witt_is_zero(f_lambda(x, lamA))) kernel.push_back(x);
            WittVector xe = x;
            while (xe.c.size() < depth) xe.c.push_back(inst.A->zero());
            if (witt_is_zero(f_lambda(xe, lam_pl)) && kernel0.size() < sample) kernel0.push_back(x);
        }
        // deterministic sample spread across the enumeration
        std::vector<WittVector> xs;
        size_t step = std::max<size_t>(1, vectors.size() / sample);
        for (size_t i = 0; i < vectors.size() && xs.size() < sample; i += step) xs.push_back(vectors[i]);

        TensorQuotient T2(ctx.Q, 2);
        auto dX = hopf_law(T2, lamA, T2.embed(0, ctx.Q.gen()), T2.embed(1, ctx.Q.gen()));
        std::vector<TensorQuotient::El> dpow = {T2.one()};
        for (size_t i = 1; i < ctx.Q.rank(); ++i) dpow.push_back(T2.mul(dpow.back(), dX));
        auto is_group_like = [&](const QuotientAlgebra::El& g) {
            TensorQuotient::El dg = T2.zero();
            for (size_t i = 0; i < ctx.Q.rank(); ++i)
                if (!g[i].is_zero()) dg = T2.add(dg, T2.scale(g[i], dpow[i]));
            return g[0].is_one() && T2.equal(dg, T2.mul(T2.embed(0, g), T2.embed(1, g)));
        };

        std::string fail;
        WittVector aA = reduce_vector(inst.A, a_vector_lift(inst, inst.window));
        for (const auto& x : kernel) {
            auto g = pairing_phi(inst, ctx, x);
            if (!is_group_like(g)) {
                fail = "phi(" + x.str() + ") = " + ctx.Q.to_string(g) + " is not group-like";
                break;
            }
            for (const auto& y : kernel) {
                auto gxy = pairing_phi(inst, ctx, witt_add(x, y));
                if (!ctx.Q.equal(gxy, ctx.Q.mul(g, pairing_phi(inst, ctx, y)))) {
                    fail = "phi not multiplicative at " + x.str() + " + " + y.str();
                    break;
                }
            }
            if (!fail.empty()) break;
        }
        if (fail.empty()) {
            // shifts run over Ker F^{(lambda^{p^l})}: phi is constant on
            // cosets of T_a applied to that kernel
            for (const auto& x : xs) {
                auto g = pairing_phi(inst, ctx, x);
                for (const auto& x0 : kernel0) {
                    auto shifted = pairing_phi(inst, ctx, witt_add(x, t_a(aA, x0)));
                    if (!ctx.Q.equal(shifted, g)) {
                        fail = "phi not constant on the T_a-coset of " + x.str() + " (shift by T_a " + x0.str() + ")";
                        break;
                    }
                }
                if (!fail.empty()) break;
            }
        }
        r.pass = fail.empty();
        r.evidence = fail.empty()
                         ? "symbolic coset well-definedness mod p^l; |Ker F^(lambda)| = " +
                               std::to_string(kernel.size()) + ", images group-like and multiplicative; phi constant " +
                               "on T_a-cosets over " + std::to_string(xs.size()) + " x " + std::to_string(kernel0.size()) +
                               " sample pairs; nilpotency " + std::to_string(ctx.nilpotency)
                         : fail;
    } catch (const not_divisible& e) {
        r.evidence = e.what();
    } catch (const not_integral& e) {
        r.evidence = e.what();
    } catch (const config_error& e) {
        r.evidence = e.what();
    }
    r.millis = sw.millis();
    return r;
}

// --- diagram congruences ------------------------------------------------------

// Two checks that together give the compatibility of the two short exact
// sequences defining M_l:
//
// (i)  E_p(x, lambda^{p^l}; psi(X)) = E_p(T_a x, lambda; X)  (mod p^l) on
//      generic kernel ghosts of Ker F^{(lambda^{p^l})}, the domain the first
//      vertical map is applied to.
//
// (ii) For free w, the mod-p^l congruence between the two cocycles
//      F_p(w, lambda^{p^l}; psi X, psi Y) and F_p(T'_a w, lambda; X, Y) fails
//      as stated (even on kernel ghosts), but the two cocycles agree exactly
//      up to the explicit symmetric coboundary of
//        G(Z) = G_p(F^{(lambda^{p^l})} w, lambda^{p^l}; (1 + lambda Z)^{p^l}):
//      F_p(T'_a w, lambda; X, Y) G(X) G(Y) / G(X (+) Y)
//        = F_p(F^{(lambda^{p^l})} w, lambda^{p^l}; psi(X), psi(Y))   exactly,
//      where X (+) Y = X + Y + lambda XY. So the two families define the
//      same symmetric cohomology class, which is all the duality needs.
inline CheckResult diagram_congruences(const DualityInstance& inst) {
    Stopwatch sw;
    CheckResult r{"diagram-congruences", "Section 4.2 diagram (17)", false, "", 0};
    try {
        unsigned deg = std::min(inst.order, 6u);
        size_t gc = ghost_count_for(inst.p, deg);

        // (i) restricted to kernel ghosts
        {
            SymbolicFrame f = symbolic_frame(inst, 1, "s");
            Series X = Series::variable(f.K, {"X"}, deg, 0);
            WittVector aK = a_in_frame(inst, f, gc);
            std::vector<Elem> gx = kernel_ghosts(inst, f, f.x.c[0], gc);
            Series lhs = ep_witt_phantom_ghosts(inst.p, gx, f.lam.pow(inst.pl_ui()), psi_series(inst, f, X));
            Series rhs = ep_witt_phantom_ghosts(inst.p, t_a_ghosts_from(aK, gx, gc), f.lam, X);
            if (SeriesCheck c = congruent_mod_pl(inst, f, lhs, rhs); !c.ok) {
                r.evidence = "first congruence fails on kernel ghosts: " + c.detail;
                r.millis = sw.millis();
                return r;
            }
        }

        // (ii) exact coboundary factorization for free w of length 2
        {
            SymbolicFrame f = symbolic_frame(inst, 2, "w");
            std::vector<std::string> xy = {"X", "Y"};
            Series X = Series::variable(f.K, xy, deg, 0);
            Series Y = Series::variable(f.K, xy, deg, 1);
            Series one = Series::one(f.K, xy, deg);
            WittVector aK = a_in_frame(inst, f, gc + 1);
            Elem L2 = f.lam.pow(inst.pl_ui());
            std::vector<Elem> gw;
            for (size_t j = 0; j < gc + 1; ++j) gw.push_back(ghost_component(f.x, j));
            std::vector<Elem> ta = t_a_ghosts_from(aK, gw, gc + 1);
            std::vector<Elem> gfw = flam_ghosts(inst.p, gw, L2);  // ghosts of F^{(lambda^{p^l})} w

            WittVector b = witt_scalar(inst.pl_modulus(), teichmuller(inst.p, inst.lambda_lift, gc + 1));
            // G(Z) = G_p(F^{(L2)} w, L2; E(Z)) with E(Z) = E_p(p^l [lambda], lambda; Z) = (1 + lambda Z)^{p^l},
            // assembled from the Frobenius twists E^{(p^r)}(Z) = E_p(b^{(p^r)}, lambda^{p^r}; Z^{p^r}).
            auto G = [&](const Series& Z) {
                std::vector<Series> efr;
                unsigned long pw = 1;
                for (size_t ri = 0; ri < gc + 1; ++ri) {
                    WittVector bK{inst.p, {}};
                    for (const auto& c : b.c) bK.c.push_back(f.K->of(f.poly->constant(c)).pow(pw));
                    efr.push_back(pw <= deg ? ep_witt(bK, f.lam.pow(pw), Z.pow(pw)) : one);
                    pw *= inst.p;
                }
                return gp_series_of(inst.p, gfw, L2, efr);
            };
            Series lhs = fp_cocycle_of(inst.p, flam_ghosts(inst.p, ta, f.lam), f.lam, X, Y);
            Series XY = X + Y + (X * Y).scaled(f.lam);
            Series lhs_full = lhs * G(X) * G(Y) * G(XY).reciprocal();
            Series rhs = fp_cocycle_of(inst.p, gfw, L2, psi_series(inst, f, X), psi_series(inst, f, Y));
            if (std::string d = first_mismatch(lhs_full, rhs); !d.empty()) {
                r.evidence = "coboundary factorization fails at " + d;
                r.millis = sw.millis();
                return r;
            }
        }
        r.pass = true;
        r.evidence = "first congruence holds mod p^l on kernel ghosts to order " + std::to_string(deg) +
                     "; cocycles agree exactly up to the symmetric coboundary of G_p (same class in H^2_0)";
    } catch (const not_divisible& e) {
        r.evidence = e.what();
    } catch (const config_error& e) {
        r.evidence = e.what();
    }
    r.millis = sw.millis();
    return r;
}

// --- Theorem 2 regression over F_p --------------------------------------------

// Over an F_p-algebra: enumerate Ker(F^{(lambda)}) in W_l(A) with the
// same-length char-p Frobenius, pair every kernel vector through phi, and
// compare against the full group-like enumeration of A[t]/(psi).
inline CheckResult theorem2_regression(const DualityInstance& inst) {
    Stopwatch sw;
    CheckResult r{"theorem2-regression", "Theorem 2", false, "", 0};
    try {
        if (!inst.A->from_integer(inst.p).is_zero()) throw config_error("Theorem 2 regression needs an F_p-algebra");
        PairingContext ctx = pairing_context(inst);
        Elem lamA = inst.lambda_A();
        auto vectors = detail::all_vectors(inst.p, inst.A, inst.l);
        std::vector<WittVector> kernel;
        for (const auto& x : vectors)
            if (witt_is_zero(f_lambda_charp(x, lamA))) kernel.push_back(x);

        auto gls = group_likes(ctx.Q, lamA);
        std::vector<QuotientAlgebra::El> images;
        bool distinct = true, homomorphic = true, all_group_like = true;
        for (const auto& x : kernel) {
            auto g = pairing_phi(inst, ctx, x);
            for (const auto& h : images) distinct = distinct && !ctx.Q.equal(g, h);
            bool found = false;
            for (const auto& h : gls) found = found || ctx.Q.equal(g, h);
            all_group_like = all_group_like && found;
            images.push_back(std::move(g));
        }
        for (size_t i = 0; i < kernel.size() && homomorphic; ++i)
            for (size_t j = 0; j < kernel.size() && homomorphic; ++j) {
                auto gxy = pairing_phi(inst, ctx, witt_add(kernel[i], kernel[j]));
                homomorphic = ctx.Q.equal(gxy, ctx.Q.mul(images[i], images[j]));
            }
        bool counts = kernel.size() == gls.size();
        r.pass = distinct && homomorphic && all_group_like && counts;
        std::string imgs;
        for (const auto& g : images) imgs += (imgs.empty() ? "" : ", ") + ctx.Q.to_string(g);
        r.evidence = "|Ker F^(lambda)| = " + std::to_string(kernel.size()) + ", group-likes = " +
                     std::to_string(gls.size()) + "; distinct " + std::to_string(distinct) + ", homomorphism " +
                     std::to_string(homomorphic) + ", images group-like " + std::to_string(all_group_like) +
                     "; images: " + imgs;
    } catch (const not_divisible& e) {
        r.evidence = e.what();
    } catch (const config_error& e) {
        r.evidence = e.what();
    }
    r.millis = sw.millis();
    return r;
}

}  // namespace wittlab
