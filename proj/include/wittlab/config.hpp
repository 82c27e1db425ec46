#pragma once

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "wittlab/duality.hpp"

namespace wittlab {

// Declarative instance description: a flat key = value text file.
//
//   name    = flagship          # optional label
//   p       = 2                 # the prime
//   l       = 2                 # p^l = 0 in the base ring
//   ring    = cyclotomic-quotient        # base ring A
//   lift    = cyclotomic-lift            # p-torsion-free lift of A
//   modulus = 4                 # only for ring = modular
//   lambda  = 1 - z             # element of the lift: integer polynomial in
//                               # z (the root of unity) or a plain integer
//   window  = 3                 # Witt coordinate window
//   order   = 8                 # series truncation order
//
// Lines starting with '#' and blank lines are ignored; '#' also starts a
// trailing comment. Unknown keys are rejected.

namespace configdetail {

inline std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline unsigned long parse_ulong(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        unsigned long v = std::stoul(value, &pos);
        if (pos != value.size()) throw config_error("");
        return v;
    } catch (const std::exception&) {
        throw config_error("key '" + key + "': expected a nonnegative integer, got '" + value + "'");
    }
}

// lambda as an integer polynomial in z: terms like "1 - z", "3 + 2 z^2", "-z".
inline Elem parse_lambda(const RingPtr& lift, const std::string& text) {
    Elem z = lift->zero();
    bool have_z = false;
    if (auto cl = std::dynamic_pointer_cast<const CyclotomicLiftRing>(lift)) {
        z = cl->zeta();
        have_z = true;
    }
    Elem acc = lift->zero();
    size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    bool first = true;
    skip_ws();
    while (i < text.size()) {
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
            skip_ws();
        } else if (!first) {
            throw config_error("lambda: expected '+' or '-' before '" + text.substr(i) + "'");
        }
        first = false;
        mpz_class coef = 1;
        bool saw_digits = false;
        std::string digits;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) digits += text[i++];
        if (!digits.empty()) {
            coef = mpz_class(digits);
            saw_digits = true;
        }
        skip_ws();
        if (i < text.size() && text[i] == '*') {
            ++i;
            skip_ws();
        }
        unsigned long zexp = 0;
        if (i < text.size() && text[i] == 'z') {
            if (!have_z) throw config_error("lambda uses 'z' but the lift " + lift->to_string_name() + " has no root of unity");
            ++i;
            zexp = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                std::string e;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) e += text[i++];
                if (e.empty()) throw config_error("lambda: missing exponent after '^'");
                zexp = std::stoul(e);
            }
        } else if (!saw_digits) {
            throw config_error("lambda: expected a coefficient or 'z' at '" + text.substr(i) + "'");
        }
        Elem term = lift->from_integer(sign * coef);
        if (zexp > 0) term = term * z.pow(zexp);
        acc = acc + term;
        skip_ws();
    }
    if (first) throw config_error("lambda: empty value");
    return acc;
}

inline RingPtr make_named_ring(const std::string& key, const std::string& kind, unsigned p, unsigned l,
                               const mpz_class& modulus, bool have_modulus) {
    if (kind == "integers") return make_ring(RingDescriptor::integers());
    if (kind == "p-local") return make_ring(RingDescriptor::p_local(p));
    if (kind == "modular") {
        if (!have_modulus) throw config_error("ring 'modular' needs a 'modulus' key");
        return make_ring(RingDescriptor::modular(modulus));
    }
    if (kind == "cyclotomic-quotient") return make_ring(RingDescriptor::cyclotomic_quotient(p, l));
    if (kind == "cyclotomic-lift") return make_ring(RingDescriptor::cyclotomic_lift(p, l));
    throw config_error("key '" + key + "': unknown ring kind '" + kind + "'");
}

}  // namespace configdetail

inline DualityInstance parse_instance(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (size_t h = line.find('#'); h != std::string::npos) line.erase(h);
        line = configdetail::trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(lineno) + ": expected 'key = value'");
        std::string key = configdetail::trim(line.substr(0, eq));
        std::string value = configdetail::trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw config_error("line " + std::to_string(lineno) + ": empty key or value");
        if (!kv.emplace(key, value).second)
            throw config_error("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }

    static const std::vector<std::string> known = {"name", "p", "l", "ring", "lift", "modulus",
                                                   "lambda", "window", "order"};
    for (const auto& [k, v] : kv) {
        bool ok = false;
        for (const auto& n : known) ok = ok || k == n;
        if (!ok) throw config_error("unknown key '" + k + "'");
    }
    auto require = [&](const std::string& k) -> const std::string& {
        auto it = kv.find(k);
        if (it == kv.end()) throw config_error("missing required key '" + k + "'");
        return it->second;
    };

    DualityInstance inst;
    inst.name = kv.count("name") ? kv.at("name") : "unnamed";
    inst.p = static_cast<unsigned>(configdetail::parse_ulong("p", require("p")));
    inst.l = static_cast<unsigned>(configdetail::parse_ulong("l", require("l")));
    mpz_class modulus = 0;
    bool have_modulus = kv.count("modulus") > 0;
    if (have_modulus) modulus = mpz_class(configdetail::parse_ulong("modulus", kv.at("modulus")));
    inst.A = configdetail::make_named_ring("ring", require("ring"), inst.p, inst.l, modulus, have_modulus);
    inst.lift = configdetail::make_named_ring("lift", require("lift"), inst.p, inst.l, modulus, have_modulus);
    inst.lambda_lift = configdetail::parse_lambda(inst.lift, require("lambda"));
    if (kv.count("window")) inst.window = static_cast<unsigned>(configdetail::parse_ulong("window", kv.at("window")));
    if (kv.count("order")) inst.order = static_cast<unsigned>(configdetail::parse_ulong("order", kv.at("order")));
    inst.validate();
    return inst;
}

inline DualityInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open instance file '" + path + "'");
    return parse_instance(in);
}

}  // namespace wittlab
