#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <tuple>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wittlab/witt.hpp"

namespace wittlab {

// On-disk table of structure polynomials. Versioned text, one record per
// polynomial, keyed (p, kind, index); each body is the sorted sparse monomial
// list `coef * X0^e0 * Y1^e1 * ...` with exact integer coefficients.
// Round-trips are bit-exact; verification rechecks the ghost identities
// without redoing the inversion.

struct CacheTable {
    unsigned p = 0;
    WittOp op = WittOp::Sum;
    unsigned depth = 0;
    std::vector<Elem> polys;  // indices 0..depth-1, over Z[table vars]
};

namespace cachedetail {

inline const char* kHeader = "wittlab-cache v1";

inline WittOp op_from_name(const std::string& s) {
    for (WittOp op : {WittOp::Sum, WittOp::Product, WittOp::Neg, WittOp::Frobenius, WittOp::Ta})
        if (s == witt_op_name(op)) return op;
    throw cache_corrupt("unknown table kind '" + s + "'");
}

inline std::string poly_body(const Elem& poly, const std::vector<std::string>& vars) {
    const auto& terms = PolynomialRing::val(poly).terms;
    if (terms.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms) {
        if (!s.empty()) s += " + ";
        s += IntegerRing::val(c).get_str();
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i]) s += " * " + vars[i] + "^" + std::to_string(m[i]);
    }
    return s;
}

inline Elem parse_body(const std::string& body, const std::shared_ptr<const PolynomialRing>& pr) {
    if (body == "0") return pr->zero();
    std::map<Monomial, Elem> terms;
    size_t pos = 0;
    while (pos < body.size()) {
        size_t next = body.find(" + ", pos);
        std::string term = body.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        pos = next == std::string::npos ? body.size() : next + 3;

        std::vector<std::string> factors;
        size_t fp = 0;
        while (fp < term.size()) {
            size_t fn = term.find(" * ", fp);
            factors.push_back(term.substr(fp, fn == std::string::npos ? std::string::npos : fn - fp));
            fp = fn == std::string::npos ? term.size() : fn + 3;
        }
        if (factors.empty()) throw cache_corrupt("empty term in polynomial body");
        mpz_class coef;
        if (mpz_set_str(coef.get_mpz_t(), factors[0].c_str(), 10) != 0)
            throw cache_corrupt("bad coefficient '" + factors[0] + "'");
        Monomial m(pr->nvars(), 0);
        for (size_t i = 1; i < factors.size(); ++i) {
            size_t caret = factors[i].rfind('^');
            if (caret == std::string::npos) throw cache_corrupt("bad monomial factor '" + factors[i] + "'");
            std::string name = factors[i].substr(0, caret);
            unsigned long e = std::stoul(factors[i].substr(caret + 1));
            auto it = std::find(pr->vars().begin(), pr->vars().end(), name);
            if (it == pr->vars().end()) throw cache_corrupt("unknown variable '" + name + "'");
            size_t idx = static_cast<size_t>(it - pr->vars().begin());
            if (m[idx]) throw cache_corrupt("repeated variable '" + name + "'");
            m[idx] = static_cast<std::uint32_t>(e);
        }
        if (!terms.emplace(std::move(m), pr->base()->from_integer(coef)).second)
            throw cache_corrupt("duplicate monomial in record");
    }
    return pr->of_terms(std::move(terms));
}

}  // namespace cachedetail

inline void save_cache(const std::string& path, const std::vector<CacheTable>& tables) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw cache_corrupt("cannot open '" + path + "' for writing");
    out << cachedetail::kHeader << "\n";
    for (const auto& t : tables) {
        auto vars = StructurePolynomials::var_names(t.op, t.depth);
        for (unsigned i = 0; i < t.depth; ++i) {
            out << "poly p=" << t.p << " kind=" << witt_op_name(t.op) << " depth=" << t.depth << " index=" << i
                << " = " << cachedetail::poly_body(t.polys[i], vars) << "\n";
        }
    }
    if (!out.good()) throw cache_corrupt("write failure on '" + path + "'");
}

inline std::vector<CacheTable> load_cache(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw cache_corrupt("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line != cachedetail::kHeader)
        throw cache_corrupt("bad or missing header in '" + path + "'");

    std::map<std::tuple<unsigned, int, unsigned>, CacheTable> groups;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag, kp, kkind, kdepth, kindex, eq;
        ls >> tag >> kp >> kkind >> kdepth >> kindex >> eq;
        auto want = [&](const std::string& field, const std::string& prefix) {
            if (field.rfind(prefix, 0) != 0)
                throw cache_corrupt("line " + std::to_string(lineno) + ": expected " + prefix + "...");
            return field.substr(prefix.size());
        };
        if (tag != "poly" || eq != "=") throw cache_corrupt("line " + std::to_string(lineno) + ": malformed record");
        unsigned p = static_cast<unsigned>(std::stoul(want(kp, "p=")));
        WittOp op = cachedetail::op_from_name(want(kkind, "kind="));
        unsigned depth = static_cast<unsigned>(std::stoul(want(kdepth, "depth=")));
        unsigned index = static_cast<unsigned>(std::stoul(want(kindex, "index=")));
        if (index >= depth) throw cache_corrupt("line " + std::to_string(lineno) + ": index out of range");
        std::string body;
        std::getline(ls, body);
        if (!body.empty() && body.front() == ' ') body.erase(body.begin());

        auto& g = groups[{p, static_cast<int>(op), depth}];
        if (g.polys.empty()) {
            g.p = p;
            g.op = op;
            g.depth = depth;
            auto pr = std::static_pointer_cast<const PolynomialRing>(make_ring(RingDescriptor::polynomial(
                RingDescriptor::integers(), StructurePolynomials::var_names(op, depth))));
            g.polys.assign(depth, pr->zero());
        }
        auto pr = std::static_pointer_cast<const PolynomialRing>(g.polys[0].ring_ptr());
        g.polys[index] = cachedetail::parse_body(body, pr);
    }
    std::vector<CacheTable> out;
    out.reserve(groups.size());
    for (auto& [k, v] : groups) out.push_back(std::move(v));
    return out;
}

struct CacheVerifyResult {
    bool ok = true;
    std::string detail;  // names the first bad record when !ok
};

// Recheck the defining ghost identities of every loaded table directly,
// without rerunning the inversion.
inline CacheVerifyResult verify_cache_table(const CacheTable& t) {
    auto pr = std::static_pointer_cast<const PolynomialRing>(t.polys.front().ring_ptr());
    auto var_vec = [&](unsigned offset, unsigned n) {
        WittVector v{t.p, {}};
        for (unsigned i = 0; i < n; ++i) v.c.push_back(pr->variable(offset + i));
        return v;
    };
    WittVector loaded{t.p, t.polys};
    for (unsigned k = 0; k < t.depth; ++k) {
        Elem got = ghost_component(loaded, k);
        Elem want = pr->zero();
        switch (t.op) {
            case WittOp::Sum: {
                WittVector X = var_vec(0, t.depth), Y = var_vec(t.depth, t.depth);
                want = ghost_component(X, k) + ghost_component(Y, k);
                break;
            }
            case WittOp::Product: {
                WittVector X = var_vec(0, t.depth), Y = var_vec(t.depth, t.depth);
                want = ghost_component(X, k) * ghost_component(Y, k);
                break;
            }
            case WittOp::Neg: want = -ghost_component(var_vec(0, t.depth), k); break;
            case WittOp::Frobenius: want = ghost_component(var_vec(0, t.depth + 1), k + 1); break;
            case WittOp::Ta: {
                WittVector a = var_vec(0, t.depth), x = var_vec(t.depth, t.depth);
                mpz_class pi = 1;
                for (unsigned i = 0; i <= k; ++i) {
                    unsigned long e = 1;
                    for (unsigned j = 0; j + i < k; ++j) e *= t.p;
                    want = want + pr->from_integer(pi) * a.c[i].pow(e) * ghost_component(x, k - i);
                    pi *= t.p;
                }
                break;
            }
        }
        if (!(got == want)) {
            return {false, std::string("ghost identity fails for record (p=") + std::to_string(t.p) +
                               ", kind=" + witt_op_name(t.op) + ", index=" + std::to_string(k) + ")"};
        }
    }
    return {};
}

inline CacheVerifyResult verify_cache(const std::string& path) {
    for (const auto& t : load_cache(path)) {
        CacheVerifyResult r = verify_cache_table(t);
        if (!r.ok) return r;
    }
    return {};
}

// Make the loaded tables available to the Witt operators.
inline void install_cache(const std::vector<CacheTable>& tables) {
    for (const auto& t : tables) StructurePolynomials::instance().install(t.p, t.op, t.polys);
}

}  // namespace wittlab
