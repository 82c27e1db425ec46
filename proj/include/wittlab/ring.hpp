#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wittlab/errors.hpp"

namespace wittlab {

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

// Declarative description of a base ring; rings compare equal iff their
// descriptors do.
struct RingDescriptor {
    enum class Kind {
        Integers,
        PLocalRationals,      // p
        Modular,              // modulus N
        CyclotomicQuotient,   // p, l : Z[Z]/(Phi_{p^l}(Z), p^l)
        CyclotomicLift,       // p, l : Z_(p)[Z]/(Phi_{p^l}(Z))
        PolynomialExtension,  // base, vars
        FractionField,        // base
    };

    Kind kind = Kind::Integers;
    unsigned p = 0;
    unsigned l = 0;
    mpz_class modulus = 0;
    std::vector<std::string> vars;
    std::shared_ptr<const RingDescriptor> base;

    static RingDescriptor integers() { return {}; }
    static RingDescriptor p_local(unsigned p) {
        RingDescriptor d;
        d.kind = Kind::PLocalRationals;
        d.p = p;
        return d;
    }
    static RingDescriptor modular(mpz_class n) {
        RingDescriptor d;
        d.kind = Kind::Modular;
        d.modulus = std::move(n);
        return d;
    }
    static RingDescriptor cyclotomic_quotient(unsigned p, unsigned l) {
        RingDescriptor d;
        d.kind = Kind::CyclotomicQuotient;
        d.p = p;
        d.l = l;
        return d;
    }
    static RingDescriptor cyclotomic_lift(unsigned p, unsigned l) {
        RingDescriptor d;
        d.kind = Kind::CyclotomicLift;
        d.p = p;
        d.l = l;
        return d;
    }
    static RingDescriptor polynomial(RingDescriptor b, std::vector<std::string> names) {
        RingDescriptor d;
        d.kind = Kind::PolynomialExtension;
        d.vars = std::move(names);
        d.base = std::make_shared<RingDescriptor>(std::move(b));
        return d;
    }
    static RingDescriptor fraction_field(RingDescriptor b) {
        RingDescriptor d;
        d.kind = Kind::FractionField;
        d.base = std::make_shared<RingDescriptor>(std::move(b));
        return d;
    }

    friend bool operator==(const RingDescriptor& a, const RingDescriptor& b) {
        if (a.kind != b.kind || a.p != b.p || a.l != b.l || a.modulus != b.modulus || a.vars != b.vars) return false;
        if (!a.base != !b.base) return false;
        return !a.base || *a.base == *b.base;
    }
};

struct Payload;

// Immutable element of some ring. Arithmetic dispatches through the owning
// ring handle; mixing rings raises ring_mismatch.
class Elem {
  public:
    Elem() = default;

    const Ring& ring() const { return *ring_; }
    const RingPtr& ring_ptr() const { return ring_; }
    const Payload& payload() const { return *pl_; }
    bool valid() const { return ring_ != nullptr; }

    inline Elem operator+(const Elem& o) const;
    inline Elem operator-(const Elem& o) const;
    inline Elem operator*(const Elem& o) const;
    inline Elem operator-() const;
    inline bool operator==(const Elem& o) const;
    inline bool operator!=(const Elem& o) const { return !(*this == o); }
    inline bool is_zero() const;
    inline bool is_one() const;
    inline Elem pow(unsigned long e) const;
    inline std::string str() const;

  private:
    friend class Ring;
    Elem(RingPtr r, std::shared_ptr<const Payload> p) : ring_(std::move(r)), pl_(std::move(p)) {}
    RingPtr ring_;
    std::shared_ptr<const Payload> pl_;
};

// Exponent vector, positionally matching the polynomial ring's variables.
using Monomial = std::vector<std::uint32_t>;

struct PolyData {
    // Nonzero coefficients only; lexicographic key order gives the canonical form.
    std::map<Monomial, Elem> terms;
};

struct FracData {
    Elem num;
    Elem den;
};

struct Payload {
    std::variant<mpz_class, mpq_class, std::vector<mpz_class>, std::vector<mpq_class>, PolyData, FracData> v;
};

// Outcome of exact division. In rings with zero divisors a solvable division
// may have several quotients; that case is reported, never resolved silently.
struct DivOutcome {
    enum class Status { Ok, NotDivisible, Ambiguous };
    Status status = Status::NotDivisible;
    Elem quotient;  // valid iff status == Ok

    static DivOutcome ok(Elem q) { return {Status::Ok, std::move(q)}; }
    static DivOutcome none() { return {Status::NotDivisible, {}}; }
    static DivOutcome ambiguous() { return {Status::Ambiguous, {}}; }
};

class Ring : public std::enable_shared_from_this<Ring> {
  public:
    virtual ~Ring() = default;

    const RingDescriptor& descriptor() const { return desc_; }
    bool same(const Ring& o) const { return this == &o || desc_ == o.desc_; }

    virtual Elem zero() const = 0;
    virtual Elem one() const = 0;
    virtual Elem from_integer(const mpz_class& n) const = 0;
    virtual Elem add(const Elem& a, const Elem& b) const = 0;
    virtual Elem neg(const Elem& a) const = 0;
    virtual Elem mul(const Elem& a, const Elem& b) const = 0;
    virtual DivOutcome try_divide(const Elem& x, const Elem& y) const = 0;
    virtual bool is_zero_elem(const Elem& a) const = 0;
    virtual std::string to_string(const Elem& a) const = 0;

    // Canonical payloads make structural comparison the default.
    virtual bool equal(const Elem& a, const Elem& b) const;

    virtual bool is_finite() const { return false; }
    virtual mpz_class cardinality() const { throw not_finite(to_string_name()); }
    virtual Elem element_at(const mpz_class&) const { throw not_finite(to_string_name()); }

    virtual bool is_domain() const { return true; }
    virtual bool is_field() const { return false; }
    // True when division by arbitrary nonzero integers is available (exp/log support).
    virtual bool contains_rationals() const { return false; }
    virtual std::optional<Elem> try_invert(const Elem& a) const;
    virtual bool is_unit(const Elem& a) const { return try_invert(a).has_value(); }

    // gcd / canonical_unit back the fraction-field normal form. gcd returns
    // *some* common divisor (the greatest one where the ring supports it);
    // canonical_unit(x) is a unit u with x/u in canonical position.
    virtual Elem gcd(const Elem& a, const Elem& b) const;
    virtual Elem canonical_unit(const Elem& a) const;

    virtual std::string to_string_name() const = 0;

    Elem exact_div(const Elem& x, const Elem& y) const {
        DivOutcome r = try_divide(x, y);
        switch (r.status) {
            case DivOutcome::Status::Ok: return r.quotient;
            case DivOutcome::Status::Ambiguous: throw ambiguous_quotient(to_string(x) + " / " + to_string(y) + " in " + to_string_name());
            default: throw not_divisible(to_string(x) + " / " + to_string(y) + " in " + to_string_name());
        }
    }

  protected:
    Elem make(Payload&& p) const { return Elem(shared_from_this(), std::make_shared<const Payload>(std::move(p))); }
    static void check_same(const Ring& r, const Elem& a) {
        if (!a.valid() || !r.same(a.ring())) throw ring_mismatch();
    }
    RingDescriptor desc_;
};

inline Elem Elem::operator+(const Elem& o) const { return ring_->add(*this, o); }
inline Elem Elem::operator-(const Elem& o) const { return ring_->add(*this, ring_->neg(o)); }
inline Elem Elem::operator*(const Elem& o) const { return ring_->mul(*this, o); }
inline Elem Elem::operator-() const { return ring_->neg(*this); }
inline bool Elem::operator==(const Elem& o) const { return ring_->equal(*this, o); }
inline bool Elem::is_zero() const { return ring_->is_zero_elem(*this); }
inline bool Elem::is_one() const { return ring_->equal(*this, ring_->one()); }
inline std::string Elem::str() const { return ring_->to_string(*this); }

inline Elem Elem::pow(unsigned long e) const {
    Elem acc = ring_->one();
    Elem base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = (e >>= 1) ? base * base : base;
    }
    return acc;
}

namespace detail {

inline bool payload_equal(const Payload& a, const Payload& b) {
    if (a.v.index() != b.v.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const auto& y = std::get<T>(b.v);
            if constexpr (std::is_same_v<T, PolyData>) {
                if (x.terms.size() != y.terms.size()) return false;
                auto it = y.terms.begin();
                for (const auto& [m, c] : x.terms) {
                    if (m != it->first || !(c == it->second)) return false;
                    ++it;
                }
                return true;
            } else if constexpr (std::is_same_v<T, FracData>) {
                return x.num == y.num && x.den == y.den;
            } else {
                return x == y;
            }
        },
        a.v);
}

}  // namespace detail

inline bool Ring::equal(const Elem& a, const Elem& b) const {
    check_same(*this, a);
    check_same(*this, b);
    return detail::payload_equal(a.payload(), b.payload());
}

inline std::optional<Elem> Ring::try_invert(const Elem& a) const {
    DivOutcome r = try_divide(one(), a);
    if (r.status == DivOutcome::Status::Ok) return r.quotient;
    return std::nullopt;
}

inline Elem Ring::gcd(const Elem& a, const Elem& b) const {
    if (is_zero_elem(a)) return b;
    if (is_zero_elem(b)) return a;
    return one();  // conservative common divisor
}

inline Elem Ring::canonical_unit(const Elem&) const { return one(); }

}  // namespace wittlab
