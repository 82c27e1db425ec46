#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "wittlab/ring.hpp"

namespace wittlab {

// Sparse multivariate polynomials over an arbitrary base ring. Lexicographic
// monomial order; the canonical form is the sorted term map with no zero
// coefficients.
class PolynomialRing final : public Ring {
  public:
    PolynomialRing(RingPtr base, std::vector<std::string> vars) : base_(std::move(base)), vars_(std::move(vars)) {
        if (vars_.empty()) throw invalid_descriptor("PolynomialExtension: empty variable list");
        desc_ = RingDescriptor::polynomial(base_->descriptor(), vars_);
    }

    const RingPtr& base() const { return base_; }
    const std::vector<std::string>& vars() const { return vars_; }
    size_t nvars() const { return vars_.size(); }

    static const PolyData& val(const Elem& a) { return std::get<PolyData>(a.payload().v); }

    Elem zero() const override { return make({PolyData{}}); }
    Elem one() const override { return constant(base_->one()); }
    Elem from_integer(const mpz_class& n) const override { return constant(base_->from_integer(n)); }

    Elem constant(const Elem& c) const {
        check_same(*base_, c);
        PolyData d;
        if (!base_->is_zero_elem(c)) d.terms.emplace(Monomial(nvars(), 0), c);
        return make({std::move(d)});
    }
    Elem variable(size_t i) const {
        Monomial m(nvars(), 0);
        m.at(i) = 1;
        PolyData d;
        d.terms.emplace(std::move(m), base_->one());
        return make({std::move(d)});
    }
    Elem variable(const std::string& name) const {
        auto it = std::find(vars_.begin(), vars_.end(), name);
        if (it == vars_.end()) throw invalid_descriptor("unknown variable " + name);
        return variable(static_cast<size_t>(it - vars_.begin()));
    }
    Elem monomial(Monomial m, const Elem& c) const {
        check_same(*base_, c);
        if (m.size() != nvars()) throw invalid_descriptor("monomial arity mismatch");
        PolyData d;
        if (!base_->is_zero_elem(c)) d.terms.emplace(std::move(m), c);
        return make({std::move(d)});
    }
    Elem of_terms(std::map<Monomial, Elem> terms) const {
        for (auto it = terms.begin(); it != terms.end();) {
            check_same(*base_, it->second);
            if (it->first.size() != nvars()) throw invalid_descriptor("monomial arity mismatch");
            it = base_->is_zero_elem(it->second) ? terms.erase(it) : std::next(it);
        }
        PolyData d;
        d.terms = std::move(terms);
        return make({std::move(d)});
    }

    Elem add(const Elem& a, const Elem& b) const override {
        check_same(*this, a);
        check_same(*this, b);
        std::map<Monomial, Elem> r = val(a).terms;
        for (const auto& [m, c] : val(b).terms) {
            auto it = r.find(m);
            if (it == r.end()) {
                r.emplace(m, c);
            } else {
                Elem s = base_->add(it->second, c);
                if (base_->is_zero_elem(s))
                    r.erase(it);
                else
                    it->second = s;
            }
        }
        PolyData d;
        d.terms = std::move(r);
        return make({std::move(d)});
    }
    Elem neg(const Elem& a) const override {
        check_same(*this, a);
        std::map<Monomial, Elem> r;
        for (const auto& [m, c] : val(a).terms) r.emplace(m, base_->neg(c));
        PolyData d;
        d.terms = std::move(r);
        return make({std::move(d)});
    }
    Elem mul(const Elem& a, const Elem& b) const override {
        check_same(*this, a);
        check_same(*this, b);
        std::map<Monomial, Elem> r;
        for (const auto& [ma, ca] : val(a).terms) {
            for (const auto& [mb, cb] : val(b).terms) {
                Monomial m(nvars());
                for (size_t i = 0; i < nvars(); ++i) m[i] = ma[i] + mb[i];
                Elem c = base_->mul(ca, cb);
                auto it = r.find(m);
                if (it == r.end()) {
                    if (!base_->is_zero_elem(c)) r.emplace(std::move(m), std::move(c));
                } else {
                    Elem s = base_->add(it->second, c);
                    if (base_->is_zero_elem(s))
                        r.erase(it);
                    else
                        it->second = s;
                }
            }
        }
        PolyData d;
        d.terms = std::move(r);
        return make({std::move(d)});
    }

    // Exact multivariate division by repeated leading-term elimination.
    DivOutcome try_divide(const Elem& x, const Elem& y) const override {
        check_same(*this, x);
        check_same(*this, y);
        if (is_zero_elem(y)) return is_zero_elem(x) ? DivOutcome::ambiguous() : DivOutcome::none();
        const auto& gt = val(y).terms;
        auto glead = gt.rbegin();
        Elem rem = x;
        std::map<Monomial, Elem> q;
        while (!is_zero_elem(rem)) {
            auto flead = val(rem).terms.rbegin();
            Monomial qm(nvars());
            for (size_t i = 0; i < nvars(); ++i) {
                if (flead->first[i] < glead->first[i]) return DivOutcome::none();
                qm[i] = flead->first[i] - glead->first[i];
            }
            DivOutcome dc = base_->try_divide(flead->second, glead->second);
            if (dc.status == DivOutcome::Status::Ambiguous) return DivOutcome::ambiguous();
            if (dc.status != DivOutcome::Status::Ok) return DivOutcome::none();
            Elem qt = monomial(qm, dc.quotient);
            q.emplace(std::move(qm), dc.quotient);
            rem = add(rem, neg(mul(qt, y)));
            if (!is_zero_elem(rem) && !(val(rem).terms.rbegin()->first < flead->first)) return DivOutcome::none();
        }
        PolyData d;
        d.terms = std::move(q);
        return DivOutcome::ok(make({std::move(d)}));
    }

    bool is_zero_elem(const Elem& a) const override { return val(a).terms.empty(); }

    std::string to_string(const Elem& a) const override {
        const auto& t = val(a).terms;
        if (t.empty()) return "0";
        std::string s;
        for (const auto& [m, c] : t) {
            if (!s.empty()) s += " + ";
            std::string cs = base_->to_string(c);
            bool need_paren = cs.find(' ') != std::string::npos || cs.find('+') != std::string::npos;
            std::string ms;
            for (size_t i = 0; i < nvars(); ++i) {
                if (m[i] == 0) continue;
                if (!ms.empty()) ms += "*";
                ms += vars_[i];
                if (m[i] > 1) ms += "^" + std::to_string(m[i]);
            }
            if (ms.empty()) {
                s += need_paren ? "(" + cs + ")" : cs;
            } else if (cs == "1") {
                s += ms;
            } else {
                s += (need_paren ? "(" + cs + ")" : cs) + "*" + ms;
            }
        }
        return s;
    }
    std::string to_string_name() const override {
        std::string s = base_->to_string_name() + "[";
        for (size_t i = 0; i < vars_.size(); ++i) s += (i ? "," : "") + vars_[i];
        return s + "]";
    }

    bool is_domain() const override { return base_->is_domain(); }
    bool contains_rationals() const override { return false; }

    // Partial gcd: exact monomial and coefficient-content part, plus a
    // whole-divisibility collapse. Sufficient for fraction normalization in
    // this ring tower, where denominators are monomials times constants.
    Elem gcd(const Elem& a, const Elem& b) const override {
        if (is_zero_elem(a)) return b;
        if (is_zero_elem(b)) return a;
        {
            DivOutcome d = try_divide(b, a);
            if (d.status == DivOutcome::Status::Ok) return a;
        }
        {
            DivOutcome d = try_divide(a, b);
            if (d.status == DivOutcome::Status::Ok) return b;
        }
        Monomial g = min_exponents(a);
        const Monomial mb = min_exponents(b);
        for (size_t i = 0; i < nvars(); ++i) g[i] = std::min(g[i], mb[i]);
        Elem content = content_gcd(content_gcd(base_->zero(), a), b);
        return monomial(std::move(g), content);
    }
    Elem canonical_unit(const Elem& a) const override {
        if (is_zero_elem(a)) return one();
        return constant(base_->canonical_unit(val(a).terms.rbegin()->second));
    }

    // Total degree of the polynomial (0 for constants; -1 for zero).
    long total_degree(const Elem& a) const {
        long d = -1;
        for (const auto& [m, c] : val(a).terms) {
            long s = 0;
            for (auto e : m) s += e;
            d = std::max(d, s);
        }
        return d;
    }

  private:
    Monomial min_exponents(const Elem& a) const {
        Monomial g(nvars(), 0);
        bool first = true;
        for (const auto& [m, c] : val(a).terms) {
            if (first) {
                g = m;
                first = false;
            } else {
                for (size_t i = 0; i < nvars(); ++i) g[i] = std::min(g[i], m[i]);
            }
        }
        return g;
    }
    Elem content_gcd(Elem acc, const Elem& a) const {
        for (const auto& [m, c] : val(a).terms) {
            acc = base_->gcd(acc, c);
            if (!base_->is_zero_elem(acc) && base_->equal(acc, base_->one())) break;
        }
        return acc;
    }

    RingPtr base_;
    std::vector<std::string> vars_;
};

}  // namespace wittlab
