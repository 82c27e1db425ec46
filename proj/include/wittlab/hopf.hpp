#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wittlab/rings.hpp"

namespace wittlab {

// A[t]/(psi) for a monic polynomial psi of degree n: a free A-module with
// basis 1, t, ..., t^{n-1}. Elements are coefficient vectors of length n.
class QuotientAlgebra {
  public:
    using El = std::vector<Elem>;

    QuotientAlgebra(RingPtr A, std::vector<Elem> psi) : A_(std::move(A)), psi_(std::move(psi)) {
        if (psi_.size() < 2) throw invalid_descriptor("quotient modulus must have degree >= 1");
        if (!psi_.back().is_one()) throw invalid_descriptor("quotient modulus must be monic");
        n_ = psi_.size() - 1;
    }

    const RingPtr& base() const { return A_; }
    size_t rank() const { return n_; }
    const std::vector<Elem>& modulus() const { return psi_; }

    El zero() const { return El(n_, A_->zero()); }
    El one() const {
        El e = zero();
        e[0] = A_->one();
        return e;
    }
    El gen() const {
        El e = zero();
        if (n_ >= 2)
            e[1] = A_->one();
        else
            e[0] = -psi_[0];  // t = -psi_0 when n = 1
        return e;
    }
    El scalar(const Elem& c) const {
        El e = zero();
        e[0] = c;
        return e;
    }

    // Reduce an arbitrary-length coefficient vector modulo psi.
    El reduce(std::vector<Elem> c) const {
        while (c.size() > n_) {
            Elem top = c.back();
            c.pop_back();
            if (top.is_zero()) continue;
            size_t off = c.size() - n_;
            for (size_t j = 0; j < n_; ++j) c[off + j] = c[off + j] - top * psi_[j];
        }
        c.resize(n_, A_->zero());
        return c;
    }

    El add(const El& a, const El& b) const {
        El r = a;
        for (size_t i = 0; i < n_; ++i) r[i] = r[i] + b[i];
        return r;
    }
    El sub(const El& a, const El& b) const {
        El r = a;
        for (size_t i = 0; i < n_; ++i) r[i] = r[i] - b[i];
        return r;
    }
    El neg(const El& a) const {
        El r = a;
        for (size_t i = 0; i < n_; ++i) r[i] = -r[i];
        return r;
    }
    El scale(const Elem& c, const El& a) const {
        El r = a;
        for (size_t i = 0; i < n_; ++i) r[i] = c * r[i];
        return r;
    }
    El mul(const El& a, const El& b) const {
        std::vector<Elem> c(2 * n_ - 1, A_->zero());
        for (size_t i = 0; i < n_; ++i) {
            if (a[i].is_zero()) continue;
            for (size_t j = 0; j < n_; ++j) c[i + j] = c[i + j] + a[i] * b[j];
        }
        return reduce(std::move(c));
    }
    El pow(El a, unsigned long e) const {
        El acc = one();
        while (e) {
            if (e & 1) acc = mul(acc, a);
            if (e >>= 1) a = mul(a, a);
        }
        return acc;
    }
    bool is_zero(const El& a) const {
        for (const auto& c : a)
            if (!c.is_zero()) return false;
        return true;
    }
    bool equal(const El& a, const El& b) const { return is_zero(sub(a, b)); }

    // Smallest D >= 1 with a^D = 0, or -1 if none found up to the cap.
    long nilpotency_index(const El& a, unsigned long cap = 4096) const {
        El x = a;
        for (unsigned long d = 1; d <= cap; ++d) {
            if (is_zero(x)) return static_cast<long>(d);
            x = mul(x, a);
        }
        return -1;
    }

    std::string to_string(const El& a) const {
        std::string s;
        for (size_t i = 0; i < n_; ++i) {
            if (a[i].is_zero()) continue;
            if (!s.empty()) s += " + ";
            std::string cs = a[i].str();
            bool paren = cs.find(' ') != std::string::npos;
            if (i == 0)
                s += paren ? "(" + cs + ")" : cs;
            else
                s += (cs == "1" ? "" : (paren ? "(" + cs + ")" : cs) + "*") + "t" + (i > 1 ? "^" + std::to_string(i) : "");
        }
        return s.empty() ? "0" : s;
    }

  private:
    RingPtr A_;
    std::vector<Elem> psi_;
    size_t n_;
};

// k-fold tensor power A[t_1..t_k]/(psi(t_1),..,psi(t_k)): free of rank n^k,
// elements are flat coefficient vectors in row-major multi-index order.
class TensorQuotient {
  public:
    using El = std::vector<Elem>;

    TensorQuotient(const QuotientAlgebra& Q, unsigned k) : Q_(Q), k_(k) {
        size_ = 1;
        for (unsigned i = 0; i < k; ++i) size_ *= Q.rank();
    }

    const QuotientAlgebra& factor() const { return Q_; }
    unsigned arity() const { return k_; }
    size_t size() const { return size_; }

    El zero() const { return El(size_, Q_.base()->zero()); }
    El one() const {
        El e = zero();
        e[0] = Q_.base()->one();
        return e;
    }
    // x in tensor position `axis`, 1 elsewhere.
    El embed(unsigned axis, const QuotientAlgebra::El& x) const {
        El e = zero();
        size_t stride = stride_of(axis);
        for (size_t i = 0; i < Q_.rank(); ++i) e[i * stride] = x[i];
        return e;
    }

    El add(const El& a, const El& b) const {
        El r = a;
        for (size_t i = 0; i < size_; ++i) r[i] = r[i] + b[i];
        return r;
    }
    El sub(const El& a, const El& b) const {
        El r = a;
        for (size_t i = 0; i < size_; ++i) r[i] = r[i] - b[i];
        return r;
    }
    El scale(const Elem& c, const El& a) const {
        El r = a;
        for (size_t i = 0; i < size_; ++i) r[i] = c * r[i];
        return r;
    }
    bool is_zero(const El& a) const {
        for (const auto& c : a)
            if (!c.is_zero()) return false;
        return true;
    }
    bool equal(const El& a, const El& b) const { return is_zero(sub(a, b)); }

    El mul(const El& a, const El& b) const {
        size_t n = Q_.rank();
        size_t m = 2 * n - 1;
        // convolve into extents m^k
        std::vector<size_t> mstr(k_);
        size_t msize = 1;
        for (int i = static_cast<int>(k_) - 1; i >= 0; --i) {
            mstr[i] = msize;
            msize *= m;
        }
        std::vector<Elem> c(msize, Q_.base()->zero());
        std::vector<size_t> ia(k_), ib(k_);
        for (size_t x = 0; x < size_; ++x) {
            if (a[x].is_zero()) continue;
            decode(x, ia);
            for (size_t y = 0; y < size_; ++y) {
                if (b[y].is_zero()) continue;
                decode(y, ib);
                size_t idx = 0;
                for (unsigned t = 0; t < k_; ++t) idx += (ia[t] + ib[t]) * mstr[t];
                c[idx] = c[idx] + a[x] * b[y];
            }
        }
        // reduce each axis modulo psi
        const auto& psi = Q_.modulus();
        for (unsigned axis = 0; axis < k_; ++axis) {
            for (size_t d = m - 1; d >= n; --d) {
                // fold index d along `axis` down using t^n = -sum psi_j t^j
                size_t outer = msize / m;
                for (size_t o = 0; o < outer; ++o) {
                    size_t base = rebase(o, axis, mstr, m);
                    Elem top = c[base + d * mstr[axis]];
                    if (top.is_zero()) continue;
                    c[base + d * mstr[axis]] = Q_.base()->zero();
                    for (size_t j = 0; j < n; ++j) {
                        size_t at = base + (d - n + j) * mstr[axis];
                        c[at] = c[at] - top * psi[j];
                    }
                }
            }
        }
        // gather the n^k corner
        El r = zero();
        std::vector<size_t> ir(k_);
        for (size_t x = 0; x < size_; ++x) {
            decode(x, ir);
            size_t idx = 0;
            for (unsigned t = 0; t < k_; ++t) idx += ir[t] * mstr[t];
            r[x] = c[idx];
        }
        return r;
    }

    El pow(El a, unsigned long e) const {
        El acc = one();
        while (e) {
            if (e & 1) acc = mul(acc, a);
            if (e >>= 1) a = mul(a, a);
        }
        return acc;
    }

    // Evaluate a rank-size coefficient vector (a quotient element read as a
    // polynomial in t) at the given tensor element.
    El evaluate(const QuotientAlgebra::El& g, const El& at) const {
        El acc = zero();
        El p = one();
        for (size_t i = 0; i < Q_.rank(); ++i) {
            if (!g[i].is_zero()) acc = add(acc, scale(g[i], p));
            if (i + 1 < Q_.rank()) p = mul(p, at);
        }
        return acc;
    }

  private:
    size_t stride_of(unsigned axis) const {
        size_t s = 1;
        for (unsigned i = axis + 1; i < k_; ++i) s *= Q_.rank();
        return s;
    }
    void decode(size_t flat, std::vector<size_t>& idx) const {
        for (int i = static_cast<int>(k_) - 1; i >= 0; --i) {
            idx[i] = flat % Q_.rank();
            flat /= Q_.rank();
        }
    }
    // flat index of the `o`-th point of the complement of `axis` in the m-grid
    static size_t rebase(size_t o, unsigned axis, const std::vector<size_t>& mstr, size_t m) {
        size_t base = 0;
        for (int i = static_cast<int>(mstr.size()) - 1; i >= 0; --i) {
            if (static_cast<unsigned>(i) == axis) continue;
            base += (o % m) * mstr[i];
            o /= m;
        }
        return base;
    }

    const QuotientAlgebra& Q_;
    unsigned k_;
    size_t size_;
};

// Hopf structure on A[t]/(psi) with Delta(t) = t(x)1 + 1(x)t + lam t(x)t,
// counit t -> 0, antipode t -> -t (1+lam t)^{rank-1}-style group inverse.
struct HopfChecks {
    size_t rank = 0;
    long nilpotency = -1;     // index of the generator, -1 when not nilpotent
    bool delta_well_defined = false;  // psi(Delta t) = 0 in the tensor square
    bool coassociative = false;
    bool counit_ok = false;
    bool antipode_ok = false;
    // Nilpotency of the generator is reported but not required: when the
    // quotient picks up a unit coefficient below the leading term (which
    // happens for nontrivial lambda), the class of t has an invertible
    // component and only the rank and the Hopf axioms remain.
    bool ok() const { return delta_well_defined && coassociative && counit_ok && antipode_ok; }
};

// Group law element a*b = a + b + lam a b inside a tensor quotient.
inline TensorQuotient::El hopf_law(const TensorQuotient& T, const Elem& lam, const TensorQuotient::El& a,
                                   const TensorQuotient::El& b) {
    return T.add(T.add(a, b), T.scale(lam, T.mul(a, b)));
}

inline HopfChecks check_hopf(const QuotientAlgebra& Q, const Elem& lam, unsigned long pl) {
    HopfChecks r;
    r.rank = Q.rank();
    r.nilpotency = Q.nilpotency_index(Q.gen());

    TensorQuotient T2(Q, 2);
    auto s = T2.embed(0, Q.gen()), t = T2.embed(1, Q.gen());
    auto dX = hopf_law(T2, lam, s, t);
    // Delta extends to the quotient iff psi(Delta t) = 0
    {
        std::vector<Elem> psi_full = Q.modulus();
        TensorQuotient::El acc = T2.zero();
        TensorQuotient::El p = T2.one();
        for (size_t i = 0; i < psi_full.size(); ++i) {
            if (!psi_full[i].is_zero()) acc = T2.add(acc, T2.scale(psi_full[i], p));
            if (i + 1 < psi_full.size()) p = T2.mul(p, dX);
        }
        r.delta_well_defined = T2.is_zero(acc);
    }
    // coassociativity on the generator: both orders give s*t*u
    {
        TensorQuotient T3(Q, 3);
        auto a = T3.embed(0, Q.gen()), b = T3.embed(1, Q.gen()), c = T3.embed(2, Q.gen());
        auto left = hopf_law(T3, lam, hopf_law(T3, lam, a, b), c);
        auto right = hopf_law(T3, lam, a, hopf_law(T3, lam, b, c));
        r.coassociative = T3.equal(left, right);
    }
    // counit: applying eps (evaluation at 0) to either leg of Delta(t)
    // returns t; in coordinates, the degree-0 slice along each axis
    {
        size_t n = Q.rank();
        QuotientAlgebra::El left(n, Q.base()->zero()), right(n, Q.base()->zero());
        for (size_t j = 0; j < n; ++j) {
            left[j] = dX[j];       // (eps (x) id): s-degree 0 row
            right[j] = dX[j * n];  // (id (x) eps): t-degree 0 column
        }
        r.counit_ok = Q.equal(left, Q.gen()) && Q.equal(right, Q.gen());
    }
    // antipode: S(t) = -t (1+lam t)^{pl-1} satisfies S(t)*t = 0,
    // using (1+lam t)^{pl} = 1 in the quotient
    {
        auto one_q = Q.one();
        auto u = Q.add(one_q, Q.scale(lam, Q.gen()));  // 1 + lam t
        if (!Q.equal(Q.pow(u, pl), one_q)) {
            r.antipode_ok = false;
        } else {
            auto st = Q.neg(Q.mul(Q.gen(), Q.pow(u, pl - 1)));
            auto law = Q.add(Q.add(st, Q.gen()), Q.scale(lam, Q.mul(st, Q.gen())));
            r.antipode_ok = Q.is_zero(law);
        }
    }
    return r;
}

// All group-like elements: g with constant coefficient 1 and
// Delta(g) = g (x) g in the tensor square. Requires a finite base ring.
inline std::vector<QuotientAlgebra::El> group_likes(const QuotientAlgebra& Q, const Elem& lam) {
    const RingPtr& A = Q.base();
    if (!A->is_finite()) throw not_finite("group-like enumeration needs a finite base ring");
    mpz_class card = A->cardinality();
    mpz_class total = 1;
    for (size_t i = 1; i < Q.rank(); ++i) total *= card;
    if (total > (1 << 22)) throw not_finite("group-like search space too large");

    TensorQuotient T2(Q, 2);
    auto s = T2.embed(0, Q.gen()), t = T2.embed(1, Q.gen());
    auto dX = hopf_law(T2, lam, s, t);
    // powers of Delta(t) for evaluating g at Delta(t)
    std::vector<TensorQuotient::El> dpow = {T2.one()};
    for (size_t i = 1; i < Q.rank(); ++i) dpow.push_back(T2.mul(dpow.back(), dX));

    std::vector<QuotientAlgebra::El> out;
    for (mpz_class idx = 0; idx < total; ++idx) {
        QuotientAlgebra::El g(Q.rank(), A->zero());
        g[0] = A->one();
        mpz_class rem = idx;
        for (size_t i = 1; i < Q.rank(); ++i) {
            mpz_class q, r;
            mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rem.get_mpz_t(), card.get_mpz_t());
            g[i] = A->element_at(r);
            rem = q;
        }
        TensorQuotient::El dg = T2.zero();
        for (size_t i = 0; i < Q.rank(); ++i)
            if (!g[i].is_zero()) dg = T2.add(dg, T2.scale(g[i], dpow[i]));
        auto gg = T2.mul(T2.embed(0, g), T2.embed(1, g));
        if (T2.equal(dg, gg)) out.push_back(std::move(g));
    }
    return out;
}

}  // namespace wittlab
