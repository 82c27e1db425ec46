#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wittlab/rings.hpp"

namespace wittlab {

// Power series in finitely many variables, truncated at a fixed total degree:
// every operation discards terms of total degree > deg(). Coefficients live in
// an arbitrary ring; exp/log/fractional powers additionally need division by
// integers (contains_rationals).
class Series {
  public:
    Series(RingPtr ring, std::vector<std::string> vars, unsigned deg)
        : ring_(std::move(ring)), vars_(std::move(vars)), deg_(deg) {
        if (vars_.empty()) throw invalid_descriptor("series needs at least one variable");
    }

    const RingPtr& ring() const { return ring_; }
    const std::vector<std::string>& vars() const { return vars_; }
    size_t nvars() const { return vars_.size(); }
    unsigned deg() const { return deg_; }
    const std::map<Monomial, Elem>& terms() const { return terms_; }

    static Series constant(RingPtr ring, std::vector<std::string> vars, unsigned deg, const Elem& c) {
        Series s(std::move(ring), std::move(vars), deg);
        if (!c.is_zero()) s.terms_.emplace(Monomial(s.nvars(), 0), c);
        return s;
    }
    static Series zero(RingPtr ring, std::vector<std::string> vars, unsigned deg) {
        Elem z = ring->zero();
        return constant(std::move(ring), std::move(vars), deg, z);
    }
    static Series one(RingPtr ring, std::vector<std::string> vars, unsigned deg) {
        Elem o = ring->one();
        return constant(std::move(ring), std::move(vars), deg, o);
    }
    static Series variable(RingPtr ring, std::vector<std::string> vars, unsigned deg, size_t i) {
        Series s(std::move(ring), std::move(vars), deg);
        if (i >= s.nvars()) throw invalid_descriptor("variable index out of range");
        if (deg >= 1) {
            Monomial m(s.nvars(), 0);
            m[i] = 1;
            s.terms_.emplace(std::move(m), s.ring_->one());
        }
        return s;
    }

    Elem coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? ring_->zero() : it->second;
    }
    Elem constant_term() const { return coeff(Monomial(nvars(), 0)); }
    bool is_zero() const { return terms_.empty(); }

    void set_coeff(Monomial m, const Elem& c) {
        if (m.size() != nvars()) throw invalid_descriptor("monomial arity mismatch");
        if (total(m) > deg_) return;
        if (c.is_zero())
            terms_.erase(m);
        else
            terms_.insert_or_assign(std::move(m), c);
    }

    Series truncated(unsigned d) const {
        Series r(ring_, vars_, std::min(d, deg_));
        for (const auto& [m, c] : terms_)
            if (total(m) <= r.deg_) r.terms_.emplace(m, c);
        return r;
    }

    friend Series operator+(const Series& a, const Series& b) {
        a.check_compatible(b);
        Series r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend Series operator-(const Series& a, const Series& b) {
        a.check_compatible(b);
        Series r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }
    Series operator-() const {
        Series r(ring_, vars_, deg_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }
    friend Series operator*(const Series& a, const Series& b) {
        a.check_compatible(b);
        Series r(a.ring_, a.vars_, a.deg_);
        for (const auto& [ma, ca] : a.terms_) {
            unsigned da = total(ma);
            for (const auto& [mb, cb] : b.terms_) {
                if (da + total(mb) > a.deg_) continue;
                Monomial m(a.nvars());
                for (size_t i = 0; i < a.nvars(); ++i) m[i] = ma[i] + mb[i];
                r.add_term(std::move(m), ca * cb);
            }
        }
        return r;
    }
    Series scaled(const Elem& c) const {
        Series r(ring_, vars_, deg_);
        for (const auto& [m, t] : terms_) {
            Elem v = t * c;
            if (!v.is_zero()) r.terms_.emplace(m, v);
        }
        return r;
    }
    friend bool operator==(const Series& a, const Series& b) {
        a.check_compatible(b);
        if (a.terms_.size() != b.terms_.size()) return false;
        auto it = b.terms_.begin();
        for (const auto& [m, c] : a.terms_) {
            if (m != it->first || c != it->second) return false;
            ++it;
        }
        return true;
    }
    friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }

    Series pow(unsigned long e) const {
        Series acc = one(ring_, vars_, deg_);
        Series base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            if (e >>= 1) base = base * base;
        }
        return acc;
    }

    // Substitute args[i] for variable i; every argument must share the result
    // frame and have zero constant term unless the variable only occurs to
    // degree 0.
    Series substituted(const std::vector<Series>& args) const {
        if (args.size() != nvars()) throw invalid_descriptor("substitution arity mismatch");
        for (const auto& a : args) {
            args.front().check_compatible(a);
            if (!a.constant_term().is_zero()) throw bad_constant_term("substitution argument has nonzero constant term");
        }
        const Series& frame = args.front();
        Series r = zero(frame.ring_, frame.vars_, frame.deg_);
        // power cache per variable
        std::vector<std::vector<Series>> pows(nvars());
        auto power = [&](size_t i, std::uint32_t e) -> const Series& {
            auto& cache = pows[i];
            if (cache.empty()) cache.push_back(one(frame.ring_, frame.vars_, frame.deg_));
            while (cache.size() <= e) cache.push_back(cache.back() * args[i]);
            return cache[e];
        };
        for (const auto& [m, c] : terms_) {
            Series t = constant(frame.ring_, frame.vars_, frame.deg_, c);
            for (size_t i = 0; i < nvars(); ++i)
                if (m[i]) t = t * power(i, m[i]);
            r = r + t;
        }
        return r;
    }

    // Finite evaluation: sum of c * prod values[i]^{e_i} in the values' ring.
    // Exact for nilpotent arguments whose relevant powers vanish beyond deg().
    Elem evaluate(const std::vector<Elem>& values) const {
        if (values.size() != nvars()) throw invalid_descriptor("evaluation arity mismatch");
        const RingPtr& target = values.front().ring_ptr();
        std::vector<std::vector<Elem>> pows(nvars());
        auto power = [&](size_t i, std::uint32_t e) -> const Elem& {
            auto& cache = pows[i];
            if (cache.empty()) cache.push_back(target->one());
            while (cache.size() <= e) cache.push_back(cache.back() * values[i]);
            return cache[e];
        };
        Elem acc = target->zero();
        for (const auto& [m, c] : terms_) {
            Elem t = embed(target, c);
            for (size_t i = 0; i < nvars(); ++i)
                if (m[i]) t = t * power(i, m[i]);
            acc = acc + t;
        }
        return acc;
    }

    // 1/f for f with unit constant term: geometric series in (1 - f/c).
    Series reciprocal() const {
        Elem c = constant_term();
        auto ci = ring_->try_invert(c);
        if (!ci) throw bad_constant_term("reciprocal needs a unit constant term, got " + c.str());
        Series g = one(ring_, vars_, deg_) - scaled(*ci);  // zero constant term
        Series acc = one(ring_, vars_, deg_);
        Series gp = one(ring_, vars_, deg_);
        for (unsigned k = 1; k <= deg_; ++k) {
            gp = gp * g;
            if (gp.is_zero()) break;
            acc = acc + gp;
        }
        return acc.scaled(*ci);
    }

    // log f for f with constant term 1.
    Series log() const {
        require_rationals("log");
        if (!constant_term().is_one()) throw bad_constant_term("log needs constant term 1, got " + constant_term().str());
        Series g = *this - one(ring_, vars_, deg_);
        Series acc = zero(ring_, vars_, deg_);
        Series gp = one(ring_, vars_, deg_);
        for (unsigned k = 1; k <= deg_; ++k) {
            gp = gp * g;
            if (gp.is_zero()) break;
            Elem c = rational_in(ring_, mpq_class(k % 2 ? 1 : -1, k));
            acc = acc + gp.scaled(c);
        }
        return acc;
    }

    // exp f for f with constant term 0.
    Series exp() const {
        require_rationals("exp");
        if (!constant_term().is_zero()) throw bad_constant_term("exp needs constant term 0, got " + constant_term().str());
        Series acc = one(ring_, vars_, deg_);
        Series gp = one(ring_, vars_, deg_);
        mpz_class fact = 1;
        for (unsigned k = 1; k <= deg_; ++k) {
            gp = gp * *this;
            if (gp.is_zero()) break;
            fact *= k;
            acc = acc + gp.scaled(rational_in(ring_, mpq_class(1, fact)));
        }
        return acc;
    }

    // Formal power f^t = exp(t log f) for f with constant term 1 and an
    // arbitrary ring-element exponent t.
    Series pow_elem(const Elem& t) const { return log().scaled(t).exp(); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [m, c] : terms_) {
            if (!s.empty()) s += " + ";
            std::string cs = c.str();
            bool paren = cs.find(' ') != std::string::npos || cs.find('+') != std::string::npos;
            std::string ms;
            for (size_t i = 0; i < nvars(); ++i) {
                if (!m[i]) continue;
                if (!ms.empty()) ms += "*";
                ms += vars_[i];
                if (m[i] > 1) ms += "^" + std::to_string(m[i]);
            }
            if (ms.empty())
                s += paren ? "(" + cs + ")" : cs;
            else if (cs == "1")
                s += ms;
            else
                s += (paren ? "(" + cs + ")" : cs) + "*" + ms;
        }
        return s + " + O(deg " + std::to_string(deg_ + 1) + ")";
    }

    static unsigned total(const Monomial& m) {
        unsigned s = 0;
        for (auto e : m) s += e;
        return s;
    }

  private:
    void check_compatible(const Series& o) const {
        if (!ring_->same(*o.ring_)) throw ring_mismatch("series over different rings");
        if (vars_ != o.vars_ || deg_ != o.deg_) throw length_mismatch("series frames differ");
    }
    void require_rationals(const char* what) const {
        if (!ring_->contains_rationals())
            throw non_rational_coefficients(std::string(what) + " needs division by arbitrary integers in " +
                                            ring_->to_string_name());
    }
    void add_term(Monomial m, const Elem& c) {
        if (total(m) > deg_) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!c.is_zero()) terms_.emplace(std::move(m), c);
        } else {
            Elem s = it->second + c;
            if (s.is_zero())
                terms_.erase(it);
            else
                it->second = s;
        }
    }

    RingPtr ring_;
    std::vector<std::string> vars_;
    unsigned deg_;
    std::map<Monomial, Elem> terms_;
};

}  // namespace wittlab
