// Acceptance harness: one line per criterion, nonzero exit if any fails.
//
// Usage: acceptance <path-to-wittlab-binary> <path-to-fixtures-dir>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "wittlab/config.hpp"
#include "wittlab/suites.hpp"

using namespace wittlab;

namespace {

int g_failures = 0;

void report(int n, const std::string& title, bool pass, const std::string& evidence) {
    std::cout << (pass ? "[pass]" : "[FAIL]") << " criterion " << n << ": " << title << " — " << evidence << "\n";
    if (!pass) ++g_failures;
}

bool within(const CheckResult& r, long budget_ms) { return r.pass && r.millis < budget_ms; }

DualityInstance flagship_inst() {
    DualityInstance inst;
    inst.name = "flagship";
    inst.p = 2;
    inst.l = 2;
    inst.A = make_ring(RingDescriptor::cyclotomic_quotient(2, 2));
    inst.lift = make_ring(RingDescriptor::cyclotomic_lift(2, 2));
    inst.lambda_lift =
        inst.lift->one() - std::static_pointer_cast<const CyclotomicLiftRing>(inst.lift)->zeta();
    inst.window = 3;
    inst.order = 8;
    inst.validate();
    return inst;
}

DualityInstance charp_inst(unsigned l, unsigned window) {
    DualityInstance inst;
    inst.name = l == 1 ? "f2-l1" : "char-p";
    inst.p = 2;
    inst.l = l;
    inst.A = make_ring(RingDescriptor::modular(2));
    inst.lift = make_ring(RingDescriptor::p_local(2));
    inst.lambda_lift = inst.lift->one();
    inst.window = window;
    inst.order = 8;
    inst.validate();
    return inst;
}

struct RunOutput {
    int exit_code;
    std::string text;
};

RunOutput run_cmd(const std::string& cmd) {
    std::filesystem::path out = std::filesystem::temp_directory_path() / "wittlab-acceptance-out.txt";
    int rc = std::system((cmd + " > " + out.string() + " 2>&1").c_str());
    int code = -1;
#ifdef WEXITSTATUS
    if (rc != -1) code = WEXITSTATUS(rc);
#else
    code = rc;
#endif
    std::ifstream in(out);
    std::ostringstream ss;
    ss << in.rdbuf();
    return {code, ss.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: acceptance <wittlab-binary> <fixtures-dir>\n";
        return 2;
    }
    const std::string wittlab_bin = argv[1];
    const std::string fixtures = argv[2];

    DualityInstance flagship = flagship_inst();
    DualityInstance charp2 = charp_inst(2, 2);
    DualityInstance f2l1 = charp_inst(1, 2);

    // 1. integer structure-polynomial tables with exact first-depth oracles
    {
        CheckResult r = check_structure_tables();
        report(1, "structure polynomials (p = 2, 3; depth <= 4; < 30 s)", within(r, 30000),
               r.evidence + " [" + std::to_string(r.millis) + "ms]");
    }

    // 2. Witt ring axioms, ghost homomorphism, FV = p, T_a special values
    {
        CheckResult ax = check_witt_axioms(2024);
        CheckResult fv = check_fv(2025);
        CheckResult ts = check_t_special();
        bool pass = ax.pass && fv.pass && ts.pass;
        report(2, "Witt ring axioms, FV = p, T_a special values", pass,
               pass ? ax.evidence + "; " + fv.evidence + "; " + ts.evidence
                    : (!ax.pass ? ax.evidence : !fv.pass ? fv.evidence : ts.evidence));
    }

    // 3. closed form of p^l [lambda]: b_k = p^{l-k} lambda^{p^k} alpha_k,
    //    including b_1 = -lambda^2 and alpha_2 = -8 at l = 1, congruences mod p
    {
        CheckResult r = check_closed_form();
        report(3, "closed form of p^l [lambda] with mod-p congruences", r.pass, r.evidence);
    }

    // 4. kernel equality, exhaustive: flagship 4096 vectors plus F_2, lambda = 1, l = 1
    {
        CheckResult a = lemma1_kernels(flagship);
        CheckResult b = lemma1_kernels(f2l1);
        bool pass = within(a, 60000) && b.pass;
        report(4, "kernel equality Ker(F^(lambda) T_a) = Ker(F^(lambda^{p^l})) (< 60 s)", pass,
               (pass ? a.evidence + " [" + std::to_string(a.millis) + "ms]; F_2 l=1: " + b.evidence
                     : (!a.pass || a.millis >= 60000 ? a.evidence : b.evidence)));
    }

    // 5. series engine: E_2 expansion, p-integrality to degree 12, E_p(L,L;X) = 1+LX
    {
        CheckResult e = check_artin_hasse_expansion();
        CheckResult i = check_integrality();
        CheckResult l = check_ep_lambda_lambda();
        bool pass = e.pass && i.pass && l.pass;
        report(5, "series engine fixtures and integrality", pass,
               pass ? e.evidence + "; " + i.evidence + "; " + l.evidence
                    : (!e.pass ? e.evidence : !i.pass ? i.evidence : l.evidence));
    }

    // 6. the exponential identity chain, symbolic vectors of length 3, p = 2
    {
        Stopwatch sw;
        CheckResult q = check_identity3();
        CheckResult c = check_identity9();
        long ms = sw.millis();
        bool pass = q.pass && c.pass && ms < 300000;
        report(6, "exponential identity chain (quotient representation + chain; < 5 min)", pass,
               (pass ? q.evidence + "; " + c.evidence : (!q.pass ? q.evidence : c.evidence)) + " [" +
                   std::to_string(ms) + "ms]");
    }

    // 7. coset congruence mod p^l on the kernel, with the supporting exact identity
    {
        CheckResult r = lemma2_congruence(flagship);
        report(7, "coset congruence mod 4, flagship, X-degree 8", r.pass, r.evidence);
    }

    // 8. diagram compatibility: flagship mod 4 at degree 6, char-p exact
    {
        CheckResult a = diagram_congruences(flagship);
        CheckResult b = diagram_congruences(charp2);
        bool pass = a.pass && b.pass;
        report(8, "diagram congruences (flagship mod 4; char-p exact)", pass,
               pass ? a.evidence : (!a.pass ? a.evidence : b.evidence));
    }

    // 9. duality pairing over F_2, l = 2, plus N_l rank p^l on every instance
    {
        CheckResult pc = pairing_checks(charp2);
        CheckResult t2 = theorem2_regression(charp2);
        CheckResult h1 = nl_hopf(flagship);
        CheckResult h2 = nl_hopf(charp2);
        CheckResult h3 = nl_hopf(f2l1);
        bool kernel4 = pc.evidence.find("|Ker F^(lambda)| = 4") != std::string::npos;
        bool pass = pc.pass && kernel4 && t2.pass && h1.pass && h2.pass && h3.pass;
        report(9, "pairing phi: 4 kernel points, distinct group-likes, homomorphism, coset-constant; rank p^l", pass,
               pass ? pc.evidence + "; " + t2.evidence
                    : (!pc.pass || !kernel4 ? pc.evidence
                                            : !t2.pass ? t2.evidence
                                                       : (!h1.pass ? h1.evidence : !h2.pass ? h2.evidence : h3.evidence)));
    }

    // 10. symmetry and the 2-cocycle identity to total degree 5
    {
        CheckResult r = check_cocycles();
        report(10, "symmetric 2-cocycle conditions, total degree 5", r.pass, r.evidence);
    }

    // 11. CLI end-to-end: fixture exits, failure evidence, cache round trip
    {
        std::string evidence;
        bool pass = true;
        RunOutput flag = run_cmd(wittlab_bin + " run --instance " + fixtures + "/flagship.cfg --jobs 4");
        if (flag.exit_code != 0) {
            pass = false;
            evidence = "flagship run exited " + std::to_string(flag.exit_code);
        }
        RunOutput cp = run_cmd(wittlab_bin + " run --instance " + fixtures + "/char-p.cfg --jobs 4");
        if (pass && cp.exit_code != 0) {
            pass = false;
            evidence = "char-p run exited " + std::to_string(cp.exit_code);
        }
        RunOutput bad = run_cmd(wittlab_bin + " run --instance " + fixtures + "/bad-lambda.cfg --suite lemma1");
        if (pass && bad.exit_code != 1) {
            pass = false;
            evidence = "bad-lambda run exited " + std::to_string(bad.exit_code) + ", expected 1";
        }
        if (pass && bad.text.find("NotDivisible") == std::string::npos) {
            pass = false;
            evidence = "bad-lambda output lacks NotDivisible evidence";
        }
        std::filesystem::path c1 = std::filesystem::temp_directory_path() / "wittlab-acc-cache1";
        std::filesystem::path c2 = std::filesystem::temp_directory_path() / "wittlab-acc-cache2";
        if (pass) {
            RunOutput b1 = run_cmd(wittlab_bin + " cache-build --cache " + c1.string());
            RunOutput v1 = run_cmd(wittlab_bin + " cache-verify --cache " + c1.string());
            if (b1.exit_code != 0 || v1.exit_code != 0) {
                pass = false;
                evidence = "cache build/verify exited " + std::to_string(b1.exit_code) + "/" +
                           std::to_string(v1.exit_code);
            }
        }
        if (pass) {
            // round trip: load the built cache and rewrite it; files must match bit for bit
            auto tables = load_cache((c1 / "structure.cache").string());
            std::filesystem::create_directories(c2);
            save_cache((c2 / "structure.cache").string(), tables);
            if (slurp(c1 / "structure.cache") != slurp(c2 / "structure.cache")) {
                pass = false;
                evidence = "cache round trip is not bit-exact";
            }
        }
        if (pass)
            evidence = "flagship and char-p exit 0; bad-lambda exits 1 with NotDivisible evidence; "
                       "cache round trip bit-exact";
        report(11, "CLI end-to-end", pass, evidence);
        std::filesystem::remove_all(c1);
        std::filesystem::remove_all(c2);
    }

    if (g_failures == 0) {
        std::cout << "acceptance: all 11 criteria pass\n";
        return 0;
    }
    std::cout << "acceptance: " << g_failures << " criterion/criteria FAILED\n";
    return 1;
}
