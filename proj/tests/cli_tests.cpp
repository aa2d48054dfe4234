// Black-box tests of the command-line tool. argv[1] is the binary under test.
// Covers: exit codes, error JSON shape, diagnostic-code parity with the
// library, byte-identical reruns, CSV/JSON schemas, and the output directory
// environment variable.

#include <sys/stat.h>
#include <sys/wait.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "contin/contin.hpp"
#include "support.hpp"

using nlohmann::json;
using testsupport::code_of;

namespace {

int failures = 0;

#define CHECK(cond)                                                        \
    do {                                                                   \
        if (!(cond)) {                                                     \
            ++failures;                                                    \
            std::printf("FAIL %s:%d: %s\n", __FILE__, __LINE__, #cond);    \
        }                                                                  \
    } while (0)

// bail out of the current test when the payload is not JSON at all
#define REQUIRE_JSON(j)                                                    \
    do {                                                                   \
        CHECK(!(j).is_discarded());                                        \
        if ((j).is_discarded()) return;                                    \
    } while (0)

std::string cli_path;

struct RunResult {
    int status = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

RunResult run_cli(const std::string& args) {
    const std::string cmd =
        "\"" + cli_path + "\" " + args + " >cli_test_out.tmp 2>cli_test_err.tmp";
    const int rc = std::system(cmd.c_str());
    RunResult r;
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp("cli_test_out.tmp");
    r.err = slurp("cli_test_err.tmp");
    return r;
}

std::string error_code_of(const RunResult& r) {
    const json j = json::parse(r.err, nullptr, false);
    if (j.is_discarded() || !j.contains("error")) return "<no error json>";
    return j["error"].value("code", "<no code>");
}

void test_headline() {
    const RunResult r = run_cli("headline");
    CHECK(r.status == 0);
    const json j = json::parse(r.out, nullptr, false);
    REQUIRE_JSON(j);
    CHECK(j["schema_version"] == "1");
    const contin::HeadlineConstants hc = contin::headline_constants();
    CHECK(j["half_strip_loss_factor"].get<double>() == hc.half_strip_loss_factor);
    CHECK(j["chain_digit_ratio"].get<double>() == hc.chain_digit_ratio);
    CHECK(j["strip_decade_length"].get<double>() == hc.strip_decade_length);

    const RunResult csv = run_cli("headline --format csv");
    CHECK(csv.status == 0);
    CHECK(csv.out.rfind("# contin headline\nname,value\n", 0) == 0);
}

void test_byte_identity() {
    const RunResult a = run_cli("chain --noise --seed 5 --steps 10 --L 0.5");
    const RunResult b = run_cli("chain --noise --seed 5 --steps 10 --L 0.5");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());

    const RunResult c = run_cli("chain --noise --seed 6 --steps 10 --L 0.5");
    CHECK(c.status == 0);
    CHECK(c.out != a.out);

    // spelling out a default changes nothing
    const RunResult deflt = run_cli("chain");
    const RunResult spelled = run_cli("chain --L 1.0 --steps 20 --seed 1 --format csv");
    CHECK(deflt.out == spelled.out);

    const RunResult h1 = run_cli("headline");
    const RunResult h2 = run_cli("headline --format json");
    CHECK(h1.out == h2.out);
}

void test_out_files() {
    std::remove("cli_test_a.csv");
    std::remove("cli_test_b.csv");
    const RunResult a = run_cli("disk --eps 1e-9 --seed 3 --out cli_test_a.csv");
    const RunResult b = run_cli("disk --eps 1e-9 --seed 3 --out cli_test_b.csv");
    CHECK(a.status == 0);
    CHECK(a.out.empty()); // artifact goes to the file, stdout stays quiet
    CHECK(b.status == 0);
    const std::string fa = slurp("cli_test_a.csv");
    CHECK(!fa.empty());
    CHECK(fa == slurp("cli_test_b.csv"));
    CHECK(fa.rfind("# contin disk", 0) == 0);
    std::remove("cli_test_a.csv");
    std::remove("cli_test_b.csv");
}

void test_out_dir_env() {
    mkdir("cli_test_outdir", 0755);
    setenv("CONTIN_OUT_DIR", "cli_test_outdir", 1);
    const RunResult r = run_cli("headline --out sub.json");
    unsetenv("CONTIN_OUT_DIR");
    CHECK(r.status == 0);
    const std::string written = slurp("cli_test_outdir/sub.json");
    std::remove("cli_test_outdir/sub.json");
    rmdir("cli_test_outdir");
    CHECK(!written.empty());
    const json j = json::parse(written, nullptr, false);
    REQUIRE_JSON(j);
    CHECK(j["schema_version"] == "1");
}

void test_gate_parity() {
    // every pair: the CLI rejection carries exactly the library's code
    struct Pair {
        std::string args;
        std::string lib_code;
    };
    using contin::Complex;
    const Pair pairs[] = {
        {"disk --R 1", code_of([] { contin::DiskProblem(1.0, 1e-6); })},
        {"disk --eps 2", code_of([] { contin::DiskProblem(2.0, 2.0); })},
        {"cheb --tol 0", code_of([] { contin::build_cheb([](double x) { return x; }, 0.0); })},
        {"chain --steps 3", code_of([] { contin::plan_chain(1.0, 3, 0.3, 1e-12); })},
        {"chain --r 0.7", code_of([] { contin::plan_chain(1.0, 20, 0.7, 1e-12); })},
        {"strip --x -1", code_of([] { contin::alpha_half_strip(-1.0); })},
        {"map --z \"0-2*i\"",
         code_of([] { contin::halfstrip_to_strip(Complex{0.0, -2.0}); })},
        {"coeffs --f \"foo(z)\"",
         code_of([] { contin::FunctionExpr::parse("foo(z)"); })},
        {"coeffs --f \"1+\"", code_of([] { contin::FunctionExpr::parse("1+"); })},
        {"coeffs --f \"sin(z,z)\"",
         code_of([] { contin::FunctionExpr::parse("sin(z,z)"); })},
        {"verify-ineq --nr 0", code_of([] { contin::verify_chain_inequality(0, 5); })},
    };
    for (const Pair& p : pairs) {
        const RunResult r = run_cli(p.args);
        CHECK(r.status == 2);
        CHECK(error_code_of(r) == p.lib_code);
        if (error_code_of(r) != p.lib_code)
            std::printf("  args: %s  cli: %s  lib: %s\n", p.args.c_str(),
                        error_code_of(r).c_str(), p.lib_code.c_str());
    }
}

void test_numerical_abort() {
    // |x| = sqrt(x^2) never settles, so the fit gives up: exit 3
    const RunResult r = run_cli("cheb --f \"sqrt(z^2)\" --tol 1e-15");
    CHECK(r.status == 3);
    CHECK(error_code_of(r) ==
          code_of([] { contin::build_cheb([](double x) { return std::abs(x); }, 1e-15); }));
}

void test_usage_errors() {
    CHECK(run_cli("bogus").status == 2);
    CHECK(error_code_of(run_cli("bogus")) == "cli_usage");
    CHECK(run_cli("").status == 2);
    CHECK(run_cli("disk --R").status == 2);
    CHECK(run_cli("--help").status == 0);
}

void test_strip_values() {
    const RunResult r = run_cli("strip --x 0");
    CHECK(r.status == 0);
    const json j = json::parse(r.out, nullptr, false);
    REQUIRE_JSON(j);
    CHECK(j["alpha"].get<double>() == 1.0);
    CHECK(std::abs(j["beta"].get<double>() - 4.0 / 3.141592653589793) < 1e-15);
    CHECK(j["strip_decade_length"].get<double>() ==
          contin::headline_constants().strip_decade_length);
}

void test_map_table_csv() {
    const RunResult r = run_cli("map --x0 0 --x1 4 --nx 5");
    CHECK(r.status == 0);
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    CHECK(line.rfind("# contin map", 0) == 0);
    std::getline(is, line);
    CHECK(line == "x,w,one_minus_w,env_lower,env_upper");
    int rows = 0;
    double x, w, omw, lo, hi;
    char c;
    while (std::getline(is, line)) {
        std::istringstream row(line);
        row >> x >> c >> w >> c >> omw >> c >> lo >> c >> hi;
        CHECK(omw == contin::one_minus_w(x)); // 17 digits round-trip exactly
        CHECK(lo == contin::strip_asymp_envelope(x).first);
        ++rows;
    }
    CHECK(rows == 5);
}

void test_map_point_json() {
    const RunResult r = run_cli("map --z \"1+0.5*i\"");
    CHECK(r.status == 0);
    const json j = json::parse(r.out, nullptr, false);
    REQUIRE_JSON(j);
    CHECK(j["at_corner"] == false);
    CHECK(j["form_diff"].get<double>() < 1e-12);
    const contin::MapPoint p = contin::halfstrip_to_strip({1.0, 0.5});
    CHECK(std::abs(j["w_sinh_form"][0].get<double>() - p.w.real()) < 1e-15);
}

void test_cheb_eval() {
    const RunResult r = run_cli("cheb --eval \"i/2\"");
    CHECK(r.status == 0);
    const json j = json::parse(r.out, nullptr, false);
    REQUIRE_JSON(j);
    const int degree = j["degree"].get<int>();
    CHECK(degree >= 30);
    CHECK(degree <= 46);
    CHECK(std::abs(j["eval"]["value"][0].get<double>() - std::log(0.75)) < 5e-8);
    // log(3/4) is real; the imaginary part is approximation error at rho(i/2)
    CHECK(std::abs(j["eval"]["value"][1].get<double>()) < 5e-8);

    // a tolerance below the rounding floor still fits, at the floor
    const RunResult sub = run_cli("cheb --f \"log(1+z^2)\" --tol 2e-16 --eval \"i/2\"");
    CHECK(sub.status == 0);
    const json js = json::parse(sub.out, nullptr, false);
    REQUIRE_JSON(js);
    CHECK(std::abs(js["eval"]["value"][0].get<double>() - std::log(0.75)) < 5e-8);
}

void test_error_field_csv() {
    const RunResult r = run_cli("cheb --f \"z^3\" --tol 1e-6 --grid \"0:1:3:0:0.5:2\"");
    CHECK(r.status == 0);
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    CHECK(line.rfind("# contin cheb", 0) == 0);
    std::getline(is, line);
    CHECK(line == "x,y,measured,predicted");
    int rows = 0;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 6);

    CHECK(error_code_of(run_cli("cheb --grid \"0:1:3\"")) == "grid_spec_malformed");
    CHECK(error_code_of(run_cli("cheb --grid \"0:1:0:0:1:2\"")) == "grid_resolution_invalid");
}

void test_coeffs_values() {
    // 128 samples push the aliased series tail (2^-N folding onto c_k) below
    // the comparison tolerance
    const RunResult r =
        run_cli("coeffs --f \"1/(1-z/2)\" --n 6 --radius 1.0 --samples 128 --format json");
    CHECK(r.status == 0);
    const json j = json::parse(r.out, nullptr, false);
    REQUIRE_JSON(j);
    CHECK(j["degree"] == 6);
    double p = 1.0;
    for (int k = 0; k <= 6; ++k) {
        CHECK(std::abs(j["coeffs"][static_cast<std::size_t>(k)][0].get<double>() - p) < 1e-12);
        p *= 0.5;
    }
}

void test_verify_ineq() {
    const RunResult r = run_cli("verify-ineq --nr 50 --nh 50");
    CHECK(r.status == 0);
    const json j = json::parse(r.out, nullptr, false);
    REQUIRE_JSON(j);
    CHECK(j["positive"] == true);
    const contin::IneqMargin m = contin::verify_chain_inequality(50, 50);
    CHECK(j["min_margin"].get<double>() == m.min_margin);
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::printf("usage: cli_tests <path-to-cli>\n");
        return 2;
    }
    cli_path = argv[1];

    test_headline();
    test_byte_identity();
    test_out_files();
    test_out_dir_env();
    test_gate_parity();
    test_numerical_abort();
    test_usage_errors();
    test_strip_values();
    test_map_table_csv();
    test_map_point_json();
    test_cheb_eval();
    test_error_field_csv();
    test_coeffs_values();
    test_verify_ineq();

    std::remove("cli_test_out.tmp");
    std::remove("cli_test_err.tmp");
    if (failures == 0) {
        std::printf("cli_tests: all passed\n");
        return 0;
    }
    std::printf("cli_tests: %d failure(s)\n", failures);
    return 1;
}
