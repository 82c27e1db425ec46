#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wittlab/cache.hpp"
#include "wittlab/config.hpp"

using namespace wittlab;

#ifndef FIXTURES_DIR
#define FIXTURES_DIR "tests/fixtures"
#endif

namespace {

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<CacheTable> sample_tables() {
    std::vector<CacheTable> tables;
    for (WittOp op : {WittOp::Sum, WittOp::Product, WittOp::Neg, WittOp::Frobenius, WittOp::Ta})
        tables.push_back({2, op, 3, StructurePolynomials::instance().table(2, op, 3)});
    return tables;
}

}  // namespace

TEST_CASE("cache: save/load/save round trip is bit-exact") {
    auto tables = sample_tables();
    auto f1 = temp_file("wittlab-cache-a.txt"), f2 = temp_file("wittlab-cache-b.txt");
    save_cache(f1.string(), tables);
    auto loaded = load_cache(f1.string());
    REQUIRE(loaded.size() == tables.size());
    save_cache(f2.string(), loaded);
    CHECK(slurp(f1) == slurp(f2));
    std::remove(f1.string().c_str());
    std::remove(f2.string().c_str());
}

TEST_CASE("cache: verification accepts honest tables and names tampered records") {
    auto tables = sample_tables();
    for (const auto& t : tables) CHECK(verify_cache_table(t).ok);

    auto f = temp_file("wittlab-cache-tamper.txt");
    save_cache(f.string(), tables);
    // corrupt one coefficient: bump a digit inside the body of a product record
    std::string text = slurp(f);
    size_t line = text.find("kind=product depth=3 index=1");
    REQUIRE(line != std::string::npos);
    size_t body = text.find(" = ", line);
    REQUIRE(body != std::string::npos);
    size_t digit = text.find_first_of("123456789", body + 3);
    REQUIRE(digit != std::string::npos);
    text[digit] = text[digit] == '9' ? '8' : char(text[digit] + 1);
    {
        std::ofstream out(f, std::ios::binary | std::ios::trunc);
        out << text;
    }
    // either the record no longer parses (cache_corrupt) or it parses and the
    // ghost identity recheck names the bad record
    try {
        CacheVerifyResult r = verify_cache(f.string());
        CHECK_FALSE(r.ok);
        CHECK(r.detail.find("ghost identity") != std::string::npos);
    } catch (const cache_corrupt&) {
        CHECK(true);
    }
    std::remove(f.string().c_str());
}

TEST_CASE("cache: truncated file is rejected") {
    auto tables = sample_tables();
    auto f = temp_file("wittlab-cache-trunc.txt");
    save_cache(f.string(), tables);
    std::string text = slurp(f);
    {
        std::ofstream out(f, std::ios::binary | std::ios::trunc);
        out << text.substr(0, text.size() / 2);
    }
    CHECK_THROWS_AS((void)load_cache(f.string()), cache_corrupt);
    std::remove(f.string().c_str());
}

TEST_CASE("config: the shipped fixtures parse to the expected instances") {
    DualityInstance flag = load_instance(std::string(FIXTURES_DIR) + "/flagship.cfg");
    CHECK(flag.name == "flagship");
    CHECK(flag.p == 2);
    CHECK(flag.l == 2);
    CHECK(flag.window == 3);
    CHECK(flag.order == 8);
    CHECK(flag.A->to_string_name().find("zeta") != std::string::npos);
    auto cl = std::dynamic_pointer_cast<const CyclotomicLiftRing>(flag.lift);
    REQUIRE(cl);
    CHECK(flag.lambda_lift == flag.lift->one() - cl->zeta());

    DualityInstance cp = load_instance(std::string(FIXTURES_DIR) + "/char-p.cfg");
    CHECK(cp.p == 2);
    CHECK(cp.l == 2);
    CHECK(cp.lambda_lift.is_one());
    CHECK(cp.A->from_integer(2).is_zero());

    DualityInstance bad = load_instance(std::string(FIXTURES_DIR) + "/bad-lambda.cfg");
    CHECK(bad.lambda_lift == bad.lift->from_integer(2));
    CHECK_THROWS_AS((void)a_vector_lift(bad, 3), not_divisible);
}

TEST_CASE("config: malformed inputs are rejected with config_error") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return parse_instance(in);
    };
    const std::string good =
        "p = 2\nl = 2\nring = modular\nmodulus = 4\nlift = integers\nlambda = 2\n";
    CHECK_NOTHROW((void)parse(good));

    CHECK_THROWS_AS((void)parse(good + "colour = blue\n"), config_error);     // unknown key
    CHECK_THROWS_AS((void)parse(good + "p = 3\n"), config_error);             // duplicate key
    CHECK_THROWS_AS((void)parse("p = 2\nl = 2\nring = modular\nmodulus = 4\nlift = integers\n"),
                    config_error);                                            // missing lambda
    CHECK_THROWS_AS((void)parse("p = 2\nl = 2\nring = modular\nlift = integers\nlambda = 2\n"),
                    config_error);                                            // modular without modulus
    CHECK_THROWS_AS((void)parse("p = two\nl = 2\nring = modular\nmodulus = 4\nlift = integers\nlambda = 2\n"),
                    config_error);                                            // non-numeric p
    CHECK_THROWS_AS((void)parse("p = 2\nl = 2\nring = modular\nmodulus = 4\nlift = integers\nlambda = 1 - z\n"),
                    config_error);                                            // 'z' without a cyclotomic lift
    CHECK_THROWS_AS((void)parse("p = 2\nl = 2\nring = quaternions\nmodulus = 4\nlift = integers\nlambda = 2\n"),
                    config_error);                                            // unknown ring kind
    CHECK_THROWS_AS((void)parse("p = 2\nl = 2\nring = modular\nmodulus = 4\nlift = integers\nlambda = 2 2\n"),
                    config_error);                                            // malformed lambda expression
}

TEST_CASE("config: lambda parser handles signs, coefficients, and powers of z") {
    std::istringstream in(
        "p = 2\nl = 2\nring = cyclotomic-quotient\nlift = cyclotomic-lift\nlambda = 3 - 2*z + z^2\n"
        "window = 2\norder = 4\n");
    DualityInstance inst = parse_instance(in);
    auto cl = std::dynamic_pointer_cast<const CyclotomicLiftRing>(inst.lift);
    REQUIRE(cl);
    Elem z = cl->zeta();
    CHECK(inst.lambda_lift == inst.lift->from_integer(3) - inst.lift->from_integer(2) * z + z.pow(2));
}
