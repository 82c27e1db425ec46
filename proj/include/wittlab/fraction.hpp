#pragma once

#include <string>
#include <utility>

#include "wittlab/polynomial.hpp"

namespace wittlab {

// Fraction field of an integral domain. Fractions are reduced by the base
// ring's (possibly partial) gcd, collapsed to denominator 1 whenever the
// division is exact, and unit-normalized; equality is decided by
// cross-multiplication so partial reduction is never unsound.
class FractionFieldRing final : public Ring {
  public:
    explicit FractionFieldRing(RingPtr base) : base_(std::move(base)) {
        if (!base_->is_domain()) throw invalid_descriptor("FractionField: base must be an integral domain");
        desc_ = RingDescriptor::fraction_field(base_->descriptor());
        char_zero_ = leaf_char_zero(base_->descriptor());
    }

    const RingPtr& base() const { return base_; }

    static const Elem& num(const Elem& a) { return std::get<FracData>(a.payload().v).num; }
    static const Elem& den(const Elem& a) { return std::get<FracData>(a.payload().v).den; }

    Elem zero() const override { return make({FracData{base_->zero(), base_->one()}}); }
    Elem one() const override { return make({FracData{base_->one(), base_->one()}}); }
    Elem from_integer(const mpz_class& n) const override { return make({FracData{base_->from_integer(n), base_->one()}}); }

    Elem of(const Elem& n) const {
        check_same(*base_, n);
        return make({FracData{n, base_->one()}});
    }
    Elem of(const Elem& n, const Elem& d) const {
        check_same(*base_, n);
        check_same(*base_, d);
        if (base_->is_zero_elem(d)) throw not_divisible("zero denominator");
        return normalized(n, d);
    }

    Elem add(const Elem& a, const Elem& b) const override {
        check_same(*this, a);
        check_same(*this, b);
        Elem n = base_->add(base_->mul(num(a), den(b)), base_->mul(num(b), den(a)));
        Elem d = base_->mul(den(a), den(b));
        return normalized(n, d);
    }
    Elem neg(const Elem& a) const override {
        check_same(*this, a);
        return make({FracData{base_->neg(num(a)), den(a)}});
    }
    Elem mul(const Elem& a, const Elem& b) const override {
        check_same(*this, a);
        check_same(*this, b);
        return normalized(base_->mul(num(a), num(b)), base_->mul(den(a), den(b)));
    }
    DivOutcome try_divide(const Elem& x, const Elem& y) const override {
        check_same(*this, x);
        check_same(*this, y);
        if (is_zero_elem(y)) return is_zero_elem(x) ? DivOutcome::ambiguous() : DivOutcome::none();
        return DivOutcome::ok(normalized(base_->mul(num(x), den(y)), base_->mul(den(x), num(y))));
    }
    bool is_zero_elem(const Elem& a) const override { return base_->is_zero_elem(num(a)); }
    bool equal(const Elem& a, const Elem& b) const override {
        check_same(*this, a);
        check_same(*this, b);
        return base_->equal(base_->mul(num(a), den(b)), base_->mul(num(b), den(a)));
    }
    std::string to_string(const Elem& a) const override {
        if (base_->equal(den(a), base_->one())) return base_->to_string(num(a));
        return "(" + base_->to_string(num(a)) + ") / (" + base_->to_string(den(a)) + ")";
    }
    std::string to_string_name() const override { return "Frac(" + base_->to_string_name() + ")"; }

    bool is_field() const override { return true; }
    bool contains_rationals() const override { return char_zero_; }
    std::optional<Elem> try_invert(const Elem& a) const override {
        if (is_zero_elem(a)) return std::nullopt;
        return normalized(den(a), num(a));
    }
    bool is_unit(const Elem& a) const override { return !is_zero_elem(a); }
    Elem gcd(const Elem& a, const Elem& b) const override {
        if (is_zero_elem(a) && is_zero_elem(b)) return zero();
        return one();
    }
    Elem canonical_unit(const Elem& a) const override { return is_zero_elem(a) ? one() : a; }

    // True when the fraction reduces to a genuine base-ring element.
    bool is_integral(const Elem& a) const {
        check_same(*this, a);
        return base_->equal(den(a), base_->one()) || base_->try_divide(num(a), den(a)).status == DivOutcome::Status::Ok;
    }
    // The base-ring value of an integral fraction.
    Elem integral_part(const Elem& a) const {
        check_same(*this, a);
        if (base_->equal(den(a), base_->one())) return num(a);
        return base_->exact_div(num(a), den(a));
    }

  private:
    Elem normalized(Elem n, Elem d) const {
        if (base_->is_zero_elem(n)) return zero();
        Elem g = base_->gcd(n, d);
        if (!base_->is_zero_elem(g) && !base_->equal(g, base_->one())) {
            n = base_->exact_div(n, g);
            d = base_->exact_div(d, g);
        }
        if (DivOutcome q = base_->try_divide(n, d); q.status == DivOutcome::Status::Ok) {
            n = q.quotient;
            d = base_->one();
        }
        Elem u = base_->canonical_unit(d);
        if (!base_->equal(u, base_->one())) {
            if (auto ui = base_->try_invert(u)) {
                n = base_->mul(n, *ui);
                d = base_->mul(d, *ui);
            }
        }
        return make({FracData{std::move(n), std::move(d)}});
    }

    static bool leaf_char_zero(const RingDescriptor& d) {
        switch (d.kind) {
            case RingDescriptor::Kind::Integers:
            case RingDescriptor::Kind::PLocalRationals:
            case RingDescriptor::Kind::CyclotomicLift: return true;
            case RingDescriptor::Kind::PolynomialExtension:
            case RingDescriptor::Kind::FractionField: return leaf_char_zero(*d.base);
            default: return false;
        }
    }

    RingPtr base_;
    bool char_zero_ = false;
};

}  // namespace wittlab
