#pragma once

#include <string>
#include <utility>

#include "wittlab/ring.hpp"

namespace wittlab {

namespace detail {

inline unsigned long p_valuation(mpz_class n, unsigned p, mpz_class* unit_out = nullptr) {
    // n != 0
    unsigned long v = 0;
    mpz_class q, r, pz = p;
    for (;;) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t());
        if (r != 0) break;
        n = q;
        ++v;
    }
    if (unit_out) *unit_out = n;
    return v;
}

// v_p of a nonzero rational (can be negative).
inline long p_valuation_q(const mpq_class& x, unsigned p) {
    long v = static_cast<long>(p_valuation(x.get_num(), p));
    v -= static_cast<long>(p_valuation(x.get_den(), p));
    return v;
}

inline bool is_prime(const mpz_class& n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0; }

inline mpq_class q_pow_signed(unsigned p, long e) {
    mpq_class r = 1;
    mpz_class pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), p, static_cast<unsigned long>(e < 0 ? -e : e));
    if (e >= 0)
        r = mpq_class(pe);
    else
        r = mpq_class(1, pe);
    r.canonicalize();
    return r;
}

}  // namespace detail

class IntegerRing final : public Ring {
  public:
    IntegerRing() { desc_ = RingDescriptor::integers(); }

    Elem zero() const override { return make({mpz_class(0)}); }
    Elem one() const override { return make({mpz_class(1)}); }
    Elem from_integer(const mpz_class& n) const override { return make({n}); }
    Elem of(mpz_class n) const { return make({std::move(n)}); }

    static const mpz_class& val(const Elem& a) { return std::get<mpz_class>(a.payload().v); }

    Elem add(const Elem& a, const Elem& b) const override {
        check_same(*this, a);
        check_same(*this, b);
        return make({mpz_class(val(a) + val(b))});
    }
    Elem neg(const Elem& a) const override {
        check_same(*this, a);
        return make({mpz_class(-val(a))});
    }
    Elem mul(const Elem& a, const Elem& b) const override {
        check_same(*this, a);
        check_same(*this, b);
        return make({mpz_class(val(a) * val(b))});
    }
    DivOutcome try_divide(const Elem& x, const Elem& y) const override {
        check_same(*this, x);
        check_same(*this, y);
        if (val(y) == 0) return val(x) == 0 ? DivOutcome::ambiguous() : DivOutcome::none();
        mpz_class q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), val(x).get_mpz_t(), val(y).get_mpz_t());
        if (r != 0) return DivOutcome::none();
        return DivOutcome::ok(make({std::move(q)}));
    }
    bool is_zero_elem(const Elem& a) const override { return val(a) == 0; }
    std::string to_string(const Elem& a) const override { return val(a).get_str(); }
    std::string to_string_name() const override { return "Z"; }

    Elem gcd(const Elem& a, const Elem& b) const override {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), val(a).get_mpz_t(), val(b).get_mpz_t());
        return make({std::move(g)});
    }
    Elem canonical_unit(const Elem& a) const override { return val(a) < 0 ? make({mpz_class(-1)}) : one(); }
};

// Z_(p): rationals with denominator prime to p, stored as reduced fractions.
class PLocalRationalRing final : public Ring {
  public:
    explicit PLocalRationalRing(unsigned p) : p_(p) {
        if (!detail::is_prime(mpz_class(p))) throw invalid_descriptor("PLocalRationals: p must be prime");
        desc_ = RingDescriptor::p_local(p);
    }

    unsigned p() const { return p_; }

    Elem zero() const override { return make({mpq_class(0)}); }
    Elem one() const override { return make({mpq_class(1)}); }
    Elem from_integer(const mpz_class& n) const override { return make({mpq_class(n)}); }
    Elem of(mpq_class q) const {
        q.canonicalize();
        if (mpz_divisible_ui_p(q.get_den().get_mpz_t(), p_)) throw invalid_descriptor("denominator divisible by p in Z_(p)");
        return make({std::move(q)});
    }

    static const mpq_class& val(const Elem& a) { return std::get<mpq_class>(a.payload().v); }

    Elem add(const Elem& a, const Elem& b) const override {
        check_same(*this, a);
        check_same(*this, b);
        return make({mpq_class(val(a) + val(b))});
    }
    Elem neg(const Elem& a) const override {
        check_same(*this, a);
        return make({mpq_class(-val(a))});
    }
    Elem mul(const Elem& a, const Elem& b) const override {
        check_same(*this, a);
        check_same(*this, b);
        return make({mpq_class(val(a) * val(b))});
    }
    DivOutcome try_divide(const Elem& x, const Elem& y) const override {
        check_same(*this, x);
        check_same(*this, y);
        if (val(y) == 0) return val(x) == 0 ? DivOutcome::ambiguous() : DivOutcome::none();
        mpq_class q = val(x) / val(y);
        q.canonicalize();
        if (mpz_divisible_ui_p(q.get_den().get_mpz_t(), p_)) return DivOutcome::none();
        return DivOutcome::ok(make({std::move(q)}));
    }
    bool is_zero_elem(const Elem& a) const override { return val(a) == 0; }
    std::string to_string(const Elem& a) const override { return val(a).get_str(); }
    std::string to_string_name() const override { return "Z_(" + std::to_string(p_) + ")"; }

    // Z_(p) is a DVR with uniformizer p.
    Elem gcd(const Elem& a, const Elem& b) const override {
        if (is_zero_elem(a)) return b;
        if (is_zero_elem(b)) return a;
        long v = std::min(detail::p_valuation_q(val(a), p_), detail::p_valuation_q(val(b), p_));
        return make({detail::q_pow_signed(p_, v)});
    }
    Elem canonical_unit(const Elem& a) const override {
        if (is_zero_elem(a)) return one();
        long v = detail::p_valuation_q(val(a), p_);
        mpq_class u = val(a) / detail::q_pow_signed(p_, v);
        u.canonicalize();
        return make({std::move(u)});
    }

  private:
    unsigned p_;
};

// Z/N with canonical representatives in [0, N).
class ModularRing final : public Ring {
  public:
    explicit ModularRing(mpz_class n) : n_(std::move(n)) {
        if (n_ < 2) throw invalid_descriptor("Modular: N must be >= 2");
        desc_ = RingDescriptor::modular(n_);
        prime_ = detail::is_prime(n_);
    }

    const mpz_class& modulus() const { return n_; }

    Elem zero() const override { return make({mpz_class(0)}); }
    Elem one() const override { return make({mpz_class(1)}); }
    Elem from_integer(const mpz_class& n) const override {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), n_.get_mpz_t());
        return make({std::move(r)});
    }

    static const mpz_class& val(const Elem& a) { return std::get<mpz_class>(a.payload().v); }

    Elem add(const Elem& a, const Elem& b) const override {
        check_same(*this, a);
        check_same(*this, b);
        mpz_class r = val(a) + val(b);
        if (r >= n_) r -= n_;
        return make({std::move(r)});
    }
    Elem neg(const Elem& a) const override {
        check_same(*this, a);
        if (val(a) == 0) return a;
        return make({mpz_class(n_ - val(a))});
    }
    Elem mul(const Elem& a, const Elem& b) const override {
        check_same(*this, a);
        check_same(*this, b);
        mpz_class r;
        mpz_mul(r.get_mpz_t(), val(a).get_mpz_t(), val(b).get_mpz_t());
        mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), n_.get_mpz_t());
        return make({std::move(r)});
    }
    DivOutcome try_divide(const Elem& x, const Elem& y) const override {
        check_same(*this, x);
        check_same(*this, y);
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), val(y).get_mpz_t(), n_.get_mpz_t());
        if (!mpz_divisible_p(val(x).get_mpz_t(), g.get_mpz_t())) return DivOutcome::none();
        if (g != 1) return DivOutcome::ambiguous();
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), val(y).get_mpz_t(), n_.get_mpz_t());
        return DivOutcome::ok(mul(x, make({std::move(inv)})));
    }
    bool is_zero_elem(const Elem& a) const override { return val(a) == 0; }
    std::string to_string(const Elem& a) const override { return val(a).get_str(); }
    std::string to_string_name() const override { return "Z/" + n_.get_str(); }

    bool is_finite() const override { return true; }
    mpz_class cardinality() const override { return n_; }
    Elem element_at(const mpz_class& i) const override { return make({mpz_class(i)}); }

    bool is_domain() const override { return prime_; }
    bool is_field() const override { return prime_; }
    std::optional<Elem> try_invert(const Elem& a) const override {
        mpz_class inv;
        if (!mpz_invert(inv.get_mpz_t(), val(a).get_mpz_t(), n_.get_mpz_t())) return std::nullopt;
        return make({std::move(inv)});
    }

  private:
    mpz_class n_;
    bool prime_ = false;
};

}  // namespace wittlab
