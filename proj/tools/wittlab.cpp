// wittlab: run verification suites over configured instances, manage the
// structure-polynomial cache, and emit JSON reports.
//
// Exit codes: 0 all checks pass; 1 at least one check fails; 2 configuration
// error (bad config file, unknown suite, CLI misuse); 3 internal error
// (integrality violations, corrupt cache, unexpected exceptions).

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "wittlab/cache.hpp"
#include "wittlab/config.hpp"
#include "wittlab/suites.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInternal = 3;

std::string cache_file(const std::string& cache_dir) {
    return (std::filesystem::path(cache_dir) / "structure.cache").string();
}

void write_report(const std::string& path, const std::string& instance, const std::string& suite, unsigned long seed,
                  const std::vector<wittlab::CheckResult>& results) {
    size_t passed = 0;
    for (const auto& r : results) passed += r.pass;
    nlohmann::json doc{
        {"instance", instance},
        {"suite", suite},
        {"seed", seed},
        {"checks", wittlab::to_json(results)},
        {"summary",
         {{"total", results.size()}, {"passed", passed}, {"failed", results.size() - passed}}},
    };
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw wittlab::config_error("cannot open report file '" + path + "'");
    out << doc.dump(2) << "\n";
}

int cmd_run(const std::string& instance_path, const std::string& suite, unsigned order, unsigned window,
            unsigned jobs, const std::string& report_path, const std::string& cache_dir, unsigned long seed) {
    wittlab::DualityInstance inst = wittlab::load_instance(instance_path);
    if (order > 0) inst.order = order;
    if (window > 0) inst.window = window;
    inst.validate();

    if (!cache_dir.empty() && std::filesystem::exists(cache_file(cache_dir))) {
        auto tables = wittlab::load_cache(cache_file(cache_dir));
        for (const auto& t : tables) {
            wittlab::CacheVerifyResult v = wittlab::verify_cache_table(t);
            if (!v.ok) throw wittlab::cache_corrupt(v.detail);
        }
        wittlab::install_cache(tables);
    }

    std::vector<wittlab::CheckResult> results = wittlab::run_suite(suite, inst, seed, jobs);
    bool all_pass = true;
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        std::cout << (r.pass ? "[pass] " : "[FAIL] ") << r.check << " (" << r.anchor << ", " << r.millis
                  << "ms): " << r.evidence << "\n";
    }
    std::cout << "instance " << inst.name << ", suite " << suite << ": " << results.size() << " checks, "
              << (all_pass ? "all passed" : "FAILURES present") << "\n";
    if (!report_path.empty()) write_report(report_path, inst.name, suite, seed, results);
    return all_pass ? kExitPass : kExitCheckFailed;
}

int cmd_cache_build(const std::string& cache_dir, std::vector<unsigned> primes, unsigned depth,
                    const std::vector<std::string>& kinds) {
    std::vector<wittlab::CacheTable> tables;
    for (unsigned p : primes) {
        unsigned d = std::min(depth, wittlab::witt_depth_limit(p));
        for (const auto& name : kinds) {
            wittlab::WittOp op = wittlab::cachedetail::op_from_name(name);
            tables.push_back({p, op, d, wittlab::StructurePolynomials::instance().table(p, op, d)});
        }
    }
    std::filesystem::create_directories(cache_dir);
    wittlab::save_cache(cache_file(cache_dir), tables);
    std::cout << "wrote " << tables.size() << " tables to " << cache_file(cache_dir) << "\n";
    return kExitPass;
}

int cmd_cache_verify(const std::string& path) {
    std::string file = std::filesystem::is_directory(path) ? cache_file(path) : path;
    wittlab::CacheVerifyResult r = wittlab::verify_cache(file);
    if (!r.ok) throw wittlab::cache_corrupt(r.detail);
    std::cout << "cache at " << file << " verified: all ghost identities hold\n";
    return kExitPass;
}

int cmd_show(const std::string& instance_path) {
    wittlab::DualityInstance inst = wittlab::load_instance(instance_path);
    std::cout << "instance " << inst.name << "\n"
              << "  p = " << inst.p << ", l = " << inst.l << ", p^l = " << inst.pl_modulus().get_str() << "\n"
              << "  base ring A = " << inst.A->to_string_name() << "\n"
              << "  lift       = " << inst.lift->to_string_name() << "\n"
              << "  lambda     = " << inst.lambda_lift.str() << " (in A: " << inst.lambda_A().str() << ")\n"
              << "  window = " << inst.window << ", order = " << inst.order << "\n";
    try {
        wittlab::WittVector a = wittlab::a_vector_lift(inst, inst.window);
        std::cout << "  a = lambda^(-p^l) p^l [lambda] = " << a.str() << " over the lift\n"
                  << "                                 = " << wittlab::reduce_vector(inst.A, a).str() << " over A\n";
    } catch (const wittlab::not_divisible& e) {
        std::cout << "  a undefined: " << e.what() << "\n";
    }
    std::cout << "  psi(X) = " << wittlab::poly_str(wittlab::psi_polynomial(inst), "X") << "\n";
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic verification harness for deformed Witt-vector duality"};
    app.require_subcommand(1);

    std::string instance_path, suite = "all", report_path, cache_dir;
    unsigned order = 0, window = 0, jobs = 1, depth = 4;
    unsigned long seed = 0;
    std::vector<unsigned> primes = {2, 3};
    std::vector<std::string> kinds = {"sum", "product", "neg", "frobenius", "t_a"};

    auto* run = app.add_subcommand("run", "run a verification suite on an instance");
    run->add_option("--instance", instance_path, "instance description file")->required();
    run->add_option("--suite", suite,
                    "witt-axioms | series-identities | lemma1 | lemma2 | pairing | diagram | theorem2 | all");
    run->add_option("--order", order, "override series truncation order");
    run->add_option("--window", window, "override Witt coordinate window");
    run->add_option("--jobs", jobs, "worker threads for suite execution");
    run->add_option("--report", report_path, "write the JSON report here");
    run->add_option("--cache", cache_dir, "structure-polynomial cache directory (loaded if present)");
    run->add_option("--seed", seed, "seed for randomized checks");

    auto* cb = app.add_subcommand("cache-build", "precompute structure-polynomial tables");
    cb->add_option("--cache", cache_dir, "cache directory")->required();
    cb->add_option("--p", primes, "primes to tabulate");
    cb->add_option("--depth", depth, "table depth (clamped to the per-prime limit)");
    cb->add_option("--kinds", kinds, "table kinds: sum product neg frobenius t_a");

    std::string verify_path;
    auto* cv = app.add_subcommand("cache-verify", "recheck ghost identities of a cache file");
    cv->add_option("--cache", verify_path, "cache directory or file")->required();

    auto* show = app.add_subcommand("show", "print a parsed instance and its derived data");
    show->add_option("--instance", instance_path, "instance description file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (run->parsed()) return cmd_run(instance_path, suite, order, window, jobs, report_path, cache_dir, seed);
        if (cb->parsed()) return cmd_cache_build(cache_dir, primes, depth, kinds);
        if (cv->parsed()) return cmd_cache_verify(verify_path);
        if (show->parsed()) return cmd_show(instance_path);
        return kExitConfig;
    } catch (const wittlab::config_error& e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    } catch (const wittlab::cache_corrupt& e) {
        std::cerr << e.what() << "\n";
        return kExitInternal;
    } catch (const wittlab::integrality_violation& e) {
        std::cerr << e.what() << "\n";
        return kExitInternal;
    } catch (const wittlab::closed_form_mismatch& e) {
        std::cerr << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
