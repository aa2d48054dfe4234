// Command-line front end: one subcommand per experiment, CSV/JSON artifacts.
//
// Exit codes: 0 success, 2 rejected parameters (library precondition or usage
// error), 3 numerical abort. Errors go to stderr as a single JSON object with
// a stable `code` that matches the library's diagnostic codes one-to-one.
//
// Output goes to --out (relative paths land under $CONTIN_OUT_DIR if set),
// or to stdout. Given the same parameters and seed, output files are
// byte-identical across runs: no timestamps, fixed 17-digit formatting, and
// every defaulted parameter is baked into the emitted spec line.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "contin/contin.hpp"
#include "contin/format.hpp"

namespace {

using contin::Complex;
using contin::detail::fmt17;
using nlohmann::json;

constexpr const char* kSchemaVersion = "1";

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex parse_complex(const std::string& src) {
    return contin::FunctionExpr::parse(src)(Complex{0.0, 0.0});
}

// Canonical reconstruction of the invocation, defaults included, so the
// emitted artifact records everything needed to reproduce it.
class SpecLine {
public:
    explicit SpecLine(const std::string& subcommand) { line_ = "contin " + subcommand; }

    SpecLine& arg(const std::string& flag, const std::string& value) {
        line_ += " --" + flag + " \"" + value + "\"";
        return *this;
    }
    SpecLine& arg(const std::string& flag, double value) {
        line_ += " --" + flag + " " + fmt17(value);
        return *this;
    }
    SpecLine& arg(const std::string& flag, int value) {
        line_ += " --" + flag + " " + std::to_string(value);
        return *this;
    }
    SpecLine& arg(const std::string& flag, std::uint64_t value) {
        line_ += " --" + flag + " " + std::to_string(value);
        return *this;
    }
    SpecLine& flag(const std::string& name, bool on) {
        if (on) line_ += " --" + name;
        return *this;
    }

    const std::string& str() const { return line_; }

private:
    std::string line_;
};

std::string resolve_out(const std::string& path) {
    if (path.empty() || path.front() == '/') return path;
    const char* dir = std::getenv("CONTIN_OUT_DIR");
    if (!dir || !*dir) return path;
    std::string d(dir);
    if (d.back() != '/') d += '/';
    return d + path;
}

void write_output(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    const std::string path = resolve_out(out);
    std::ofstream os(path, std::ios::binary);
    contin::detail::require(static_cast<bool>(os), "out_unwritable",
                            "cannot open output path '" + path + "'");
    os << text;
    contin::detail::require(static_cast<bool>(os), "out_unwritable",
                            "write to '" + path + "' failed");
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- headline

std::string run_headline(const std::string& format) {
    const contin::HeadlineConstants c = contin::headline_constants();
    const SpecLine spec("headline");
    if (format == "csv") {
        std::ostringstream os;
        os << "# " << spec.str() << "\n";
        os << "name,value\n";
        os << "half_strip_loss_factor," << fmt17(c.half_strip_loss_factor) << "\n";
        os << "chain_digit_ratio," << fmt17(c.chain_digit_ratio) << "\n";
        os << "strip_decade_length," << fmt17(c.strip_decade_length) << "\n";
        return os.str();
    }
    json j;
    j["schema_version"] = kSchemaVersion;
    j["spec"] = spec.str();
    j["half_strip_loss_factor"] = c.half_strip_loss_factor;
    j["chain_digit_ratio"] = c.chain_digit_ratio;
    j["strip_decade_length"] = c.strip_decade_length;
    return dump_json(j);
}

// ------------------------------------------------------------------ coeffs

struct CoeffsOpts {
    std::string f;
    int n = 16;
    std::string center = "0";
    double radius = 1.0;
    int samples = 0; // 0: next power of two >= 4 (n + 1)
    double noise = 0.0;
    std::uint64_t seed = 1;
    std::string format = "csv";
};

std::string run_coeffs(const CoeffsOpts& o) {
    const contin::FunctionExpr expr = contin::FunctionExpr::parse(o.f);
    const Complex center = parse_complex(o.center);
    const int N = o.samples > 0
                      ? o.samples
                      : static_cast<int>(contin::detail::next_pow2(
                            4 * (static_cast<std::size_t>(std::max(o.n, 0)) + 1)));

    const contin::CircleSamples samples = contin::noisy_samples(
        [&expr](Complex z) { return expr(z); }, center, o.radius, N, o.noise, o.seed);
    const contin::TaylorSeries series = contin::coeffs_from_circle_samples(samples, o.n);

    const std::string spec = SpecLine("coeffs")
                                 .arg("f", o.f)
                                 .arg("n", o.n)
                                 .arg("center", o.center)
                                 .arg("radius", o.radius)
                                 .arg("samples", N)
                                 .arg("noise", o.noise)
                                 .arg("seed", o.seed)
                                 .str();

    if (o.format == "csv") {
        std::ostringstream os;
        os << "# " << spec << "\n";
        os << "k,re,im\n";
        for (std::size_t k = 0; k < series.coeffs().size(); ++k)
            os << k << ',' << fmt17(series.coeffs()[k].real()) << ','
               << fmt17(series.coeffs()[k].imag()) << '\n';
        return os.str();
    }
    json j;
    j["schema_version"] = kSchemaVersion;
    j["spec"] = spec;
    j["center"] = complex_json(series.center());
    j["radius"] = series.radius();
    j["degree"] = series.degree();
    json coeffs = json::array();
    for (const Complex& c : series.coeffs()) coeffs.push_back(complex_json(c));
    j["coeffs"] = coeffs;
    return dump_json(j);
}

// -------------------------------------------------------------------- disk

struct DiskOpts {
    std::string f = "0.2/(1-z/4)";
    double R = 2.0;
    double eps = 1e-6;
    double M = 0.5;
    std::optional<int> n;
    int samples = 0;
    int nx = 50;
    double arg = 0.0;
    std::uint64_t seed = 1;
    std::string format = "csv";
};

std::string run_disk(const DiskOpts& o) {
    const contin::FunctionExpr expr = contin::FunctionExpr::parse(o.f);
    auto f = [&expr](Complex z) { return expr(z); };
    const contin::DiskProblem problem(o.R, o.eps, o.M, o.n);
    const int N = o.samples > 0
                      ? o.samples
                      : static_cast<int>(contin::detail::next_pow2(
                            4 * (static_cast<std::size_t>(problem.n()) + 1)));

    const contin::CircleSamples samples = contin::noisy_samples(f, N, o.eps, o.seed);
    const contin::TaylorSeries series = contin::build_continuation(samples, problem);

    const std::string spec = SpecLine("disk")
                                 .arg("f", o.f)
                                 .arg("R", o.R)
                                 .arg("eps", o.eps)
                                 .arg("M", o.M)
                                 .arg("n", problem.n())
                                 .arg("samples", N)
                                 .arg("nx", o.nx)
                                 .arg("arg", o.arg)
                                 .arg("seed", o.seed)
                                 .str();

    // sweep along the ray angle `arg`, strictly between the data circle and R
    std::vector<Complex> zs;
    std::vector<double> measured, predicted;
    for (int i = 1; i <= o.nx; ++i) {
        const double t = 1.0 + (o.R - 1.0) * i / (o.nx + 1);
        const Complex z = std::polar(t, o.arg);
        const contin::ContinuationResult res = contin::continue_at(series, problem, z);
        zs.push_back(z);
        measured.push_back(std::abs(res.value - f(z)));
        predicted.push_back(res.predicted_error);
    }

    if (o.format == "csv") {
        std::ostringstream os;
        os << "# " << spec << "\n";
        os << "x,y,measured,predicted\n";
        for (std::size_t i = 0; i < zs.size(); ++i)
            os << fmt17(zs[i].real()) << ',' << fmt17(zs[i].imag()) << ','
               << fmt17(measured[i]) << ',' << fmt17(predicted[i]) << '\n';
        return os.str();
    }
    json j;
    j["schema_version"] = kSchemaVersion;
    j["spec"] = spec;
    j["R"] = o.R;
    j["eps"] = o.eps;
    j["degree"] = problem.n();
    json rows = json::array();
    for (std::size_t i = 0; i < zs.size(); ++i)
        rows.push_back(json{{"z", complex_json(zs[i])},
                            {"measured", measured[i]},
                            {"predicted", predicted[i]}});
    j["points"] = rows;
    return dump_json(j);
}

// ------------------------------------------------------------------- strip

struct StripOpts {
    std::optional<double> x;
    double x0 = 0.0;
    double x1 = 5.0;
    int nx = 51;
    std::string format; // default depends on mode
};

std::string run_strip(const StripOpts& o) {
    const double decade = contin::headline_constants().strip_decade_length;
    if (o.x) {
        const double alpha = contin::alpha_half_strip(*o.x);
        const double beta = contin::beta_half_strip(*o.x);
        const std::string spec = SpecLine("strip").arg("x", *o.x).str();
        if (o.format == "csv") {
            std::ostringstream os;
            os << "# " << spec << "\n";
            os << "# strip_decade_length," << fmt17(decade) << "\n";
            os << "x,alpha,beta\n";
            os << fmt17(*o.x) << ',' << fmt17(alpha) << ',' << fmt17(beta) << '\n';
            return os.str();
        }
        json j;
        j["schema_version"] = kSchemaVersion;
        j["spec"] = spec;
        j["x"] = *o.x;
        j["alpha"] = alpha;
        j["beta"] = beta;
        j["strip_decade_length"] = decade;
        return dump_json(j);
    }

    contin::detail::require(o.nx >= 1 && o.nx <= 100000, "strip_nx_invalid",
                            "table size must lie in [1, 100000]");
    contin::detail::require(o.x0 <= o.x1, "strip_extent_invalid",
                            "x0 must not exceed x1");
    const std::string spec =
        SpecLine("strip").arg("x0", o.x0).arg("x1", o.x1).arg("nx", o.nx).str();

    std::ostringstream os;
    os << "# " << spec << "\n";
    os << "# strip_decade_length," << fmt17(decade) << "\n";
    os << "x,alpha,beta\n";
    for (int i = 0; i < o.nx; ++i) {
        const double x = o.nx == 1 ? o.x0 : o.x0 + (o.x1 - o.x0) * i / (o.nx - 1);
        os << fmt17(x) << ',' << fmt17(contin::alpha_half_strip(x)) << ','
           << fmt17(contin::beta_half_strip(x)) << '\n';
    }
    if (o.format == "json") {
        json j;
        j["schema_version"] = kSchemaVersion;
        j["spec"] = spec;
        j["strip_decade_length"] = decade;
        json rows = json::array();
        for (int i = 0; i < o.nx; ++i) {
            const double x = o.nx == 1 ? o.x0 : o.x0 + (o.x1 - o.x0) * i / (o.nx - 1);
            rows.push_back(json{{"x", x},
                                {"alpha", contin::alpha_half_strip(x)},
                                {"beta", contin::beta_half_strip(x)}});
        }
        j["rows"] = rows;
        return dump_json(j);
    }
    return os.str();
}

// --------------------------------------------------------------------- map

struct MapOpts {
    std::optional<std::string> z;
    double x0 = 0.0;
    double x1 = 10.0;
    int nx = 101;
    std::string format;
};

std::string run_map(const MapOpts& o) {
    if (o.z) {
        const Complex z = parse_complex(*o.z);
        const contin::MapPoint ps = contin::halfstrip_map_sinh_form(z);
        const contin::MapPoint pe = contin::halfstrip_map_exp_form(z);
        json j;
        j["schema_version"] = kSchemaVersion;
        j["spec"] = SpecLine("map").arg("z", *o.z).str();
        j["z"] = complex_json(z);
        j["u"] = complex_json(ps.u);
        j["v"] = complex_json(ps.v);
        j["w_sinh_form"] = complex_json(ps.w);
        j["w_exp_form"] = complex_json(pe.w);
        j["at_corner"] = ps.at_corner;
        j["form_diff"] = ps.at_corner ? 0.0 : std::abs(ps.w - pe.w);
        return dump_json(j);
    }

    contin::detail::require(o.nx >= 1 && o.nx <= 100000, "map_nx_invalid",
                            "table size must lie in [1, 100000]");
    contin::detail::require(o.x0 <= o.x1, "map_extent_invalid", "x0 must not exceed x1");
    const std::string spec =
        SpecLine("map").arg("x0", o.x0).arg("x1", o.x1).arg("nx", o.nx).str();

    if (o.format == "json") {
        json j;
        j["schema_version"] = kSchemaVersion;
        j["spec"] = spec;
        json rows = json::array();
        for (int i = 0; i < o.nx; ++i) {
            const double x = o.nx == 1 ? o.x0 : o.x0 + (o.x1 - o.x0) * i / (o.nx - 1);
            const double omw = contin::one_minus_w(x);
            const auto [lo, hi] = contin::strip_asymp_envelope(x);
            rows.push_back(json{{"x", x},
                                {"w", 1.0 - omw},
                                {"one_minus_w", omw},
                                {"env_lower", lo},
                                {"env_upper", hi}});
        }
        j["rows"] = rows;
        return dump_json(j);
    }
    std::ostringstream os;
    os << "# " << spec << "\n";
    os << "x,w,one_minus_w,env_lower,env_upper\n";
    for (int i = 0; i < o.nx; ++i) {
        const double x = o.nx == 1 ? o.x0 : o.x0 + (o.x1 - o.x0) * i / (o.nx - 1);
        const double omw = contin::one_minus_w(x);
        const auto [lo, hi] = contin::strip_asymp_envelope(x);
        os << fmt17(x) << ',' << fmt17(1.0 - omw) << ',' << fmt17(omw) << ','
           << fmt17(lo) << ',' << fmt17(hi) << '\n';
    }
    return os.str();
}

// ------------------------------------------------------------------- chain

struct ChainOpts {
    std::string f = "1/(z+2)";
    double L = 1.0;
    int steps = 20;
    double r = std::exp(-1.0);
    double eps0 = 1e-12;
    bool noise = false;
    std::uint64_t seed = 1;
    int sup_points = 128;
    std::string format = "csv";
};

std::string run_chain(const ChainOpts& o) {
    const contin::FunctionExpr expr = contin::FunctionExpr::parse(o.f);
    const contin::ChainConfig cfg =
        contin::plan_chain(o.L, o.steps, o.r, o.eps0, o.sup_points);
    const contin::ChainTrace trace = contin::run_chain(
        [&expr](Complex z) { return expr(z); }, cfg, o.noise, o.seed);

    const std::string spec = SpecLine("chain")
                                 .arg("f", o.f)
                                 .arg("L", o.L)
                                 .arg("steps", o.steps)
                                 .arg("r", o.r)
                                 .arg("eps0", o.eps0)
                                 .flag("noise", o.noise)
                                 .arg("seed", o.seed)
                                 .arg("sup-points", o.sup_points)
                                 .str();

    if (o.format == "csv") {
        std::ostringstream os;
        os << "# " << spec << "\n";
        os << "# eta," << fmt17(cfg.rate.eta) << ",seed_err," << fmt17(trace.seed_err)
           << ",hypotheses_ok," << (trace.hypotheses_ok ? 1 : 0) << ",conclusion_ok,"
           << (trace.conclusion_ok ? 1 : 0) << "\n";
        os << "k,x,eps,measured,construction,degree,coeff_max\n";
        for (const contin::ChainStep& s : trace.steps)
            os << s.k << ',' << fmt17(s.x) << ',' << fmt17(s.scheduled_eps) << ','
               << fmt17(s.measured_err) << ',' << fmt17(s.construction_err) << ','
               << s.degree << ',' << fmt17(s.coeff_max) << '\n';
        return os.str();
    }
    json j;
    j["schema_version"] = kSchemaVersion;
    j["spec"] = spec;
    j["L"] = cfg.L;
    j["steps"] = cfg.n_steps;
    j["h"] = cfg.h;
    j["r"] = cfg.r;
    j["eps0"] = cfg.epsilon0;
    j["eta"] = cfg.rate.eta;
    j["noise"] = o.noise;
    j["seed_err"] = trace.seed_err;
    j["hypotheses_ok"] = trace.hypotheses_ok;
    j["conclusion_ok"] = trace.conclusion_ok;
    try {
        j["fitted_eta"] = contin::fit_digit_decay(trace, 0.2 * cfg.L, cfg.L);
    } catch (const contin::precondition_error&) {
        j["fitted_eta"] = nullptr;
    }
    json rows = json::array();
    for (const contin::ChainStep& s : trace.steps)
        rows.push_back(json{{"k", s.k},
                            {"x", s.x},
                            {"eps", s.scheduled_eps},
                            {"measured", s.measured_err},
                            {"construction", s.construction_err},
                            {"degree", s.degree},
                            {"coeff_max", s.coeff_max}});
    j["steps_trace"] = rows;
    return dump_json(j);
}

// -------------------------------------------------------------------- cheb

struct ChebOpts {
    std::string f = "log(1+z^2)";
    double tol = std::ldexp(1.0, -51);
    std::optional<std::string> eval;
    std::optional<std::string> grid; // "x0:x1:nx:y0:y1:ny"
    std::string format;
};

contin::GridSpec parse_grid(const std::string& src) {
    contin::GridSpec g{};
    std::istringstream is(src);
    char c1, c2, c3, c4, c5;
    if (!(is >> g.x0 >> c1 >> g.x1 >> c2 >> g.nx >> c3 >> g.y0 >> c4 >> g.y1 >> c5 >> g.ny) ||
        c1 != ':' || c2 != ':' || c3 != ':' || c4 != ':' || c5 != ':' || !is.eof())
        throw contin::precondition_error("grid_spec_malformed",
                                         "grid must look like x0:x1:nx:y0:y1:ny");
    return g;
}

std::string run_cheb(const ChebOpts& o) {
    const contin::FunctionExpr expr = contin::FunctionExpr::parse(o.f);
    auto fc = [&expr](Complex z) { return expr(z); };
    const contin::ChebApprox p =
        contin::build_cheb([&expr](double x) { return expr(Complex{x, 0.0}).real(); }, o.tol);

    SpecLine spec("cheb");
    spec.arg("f", o.f).arg("tol", o.tol);
    if (o.eval) spec.arg("eval", *o.eval);
    if (o.grid) spec.arg("grid", *o.grid);

    if (o.grid) {
        const contin::GridSpec g = parse_grid(*o.grid);
        const contin::GridField field = contin::error_field(p, fc, g);
        std::ostringstream os;
        field.write_csv(os, spec.str());
        return os.str();
    }

    json j;
    j["schema_version"] = kSchemaVersion;
    j["spec"] = spec.str();
    j["tol"] = o.tol;
    j["degree"] = p.degree;
    j["rho_est"] = p.rho_est;
    j["coeffs"] = p.coeffs;
    if (o.eval) {
        const Complex z = parse_complex(*o.eval);
        j["eval"] = json{{"z", complex_json(z)},
                         {"value", complex_json(contin::eval_cheb_complex(p, z))}};
    }
    return dump_json(j);
}

// ------------------------------------------------------------- verify-ineq

struct IneqOpts {
    int nr = 200;
    int nh = 200;
    std::string format = "json";
};

std::string run_verify_ineq(const IneqOpts& o) {
    const contin::IneqMargin m = contin::verify_chain_inequality(o.nr, o.nh);
    const std::string spec = SpecLine("verify-ineq").arg("nr", o.nr).arg("nh", o.nh).str();
    if (o.format == "csv") {
        std::ostringstream os;
        os << "# " << spec << "\n";
        os << "nr,nh,min_margin,r_at_min,h_at_min\n";
        os << o.nr << ',' << o.nh << ',' << fmt17(m.min_margin) << ',' << fmt17(m.r_at_min)
           << ',' << fmt17(m.h_at_min) << '\n';
        return os.str();
    }
    json j;
    j["schema_version"] = kSchemaVersion;
    j["spec"] = spec;
    j["grid_r"] = o.nr;
    j["grid_h"] = o.nh;
    j["min_margin"] = m.min_margin;
    j["r_at_min"] = m.r_at_min;
    j["h_at_min"] = m.h_at_min;
    j["positive"] = m.min_margin > 0.0;
    return dump_json(j);
}

// -------------------------------------------------------------------- main

int run(int argc, char** argv) {
    CLI::App app{"analytic-continuation experiments: digit-loss predictions vs measurements"};
    app.require_subcommand(1);
    app.fallthrough(); // subcommands pass --out up to the app

    std::string out;
    app.add_option("--out", out,
                   "output file (relative paths join $CONTIN_OUT_DIR); stdout if absent")
        ->capture_default_str();

    auto add_format = [](CLI::App* sub, std::string& fmt) {
        sub->add_option("--format", fmt, "csv or json")
            ->check(CLI::IsMember({"csv", "json", ""}));
    };

    CLI::App* headline = app.add_subcommand("headline", "the three summary constants");
    std::string headline_format = "json";
    add_format(headline, headline_format);

    CoeffsOpts co;
    CLI::App* coeffs = app.add_subcommand("coeffs", "recover series coefficients from circle samples");
    coeffs->add_option("--f", co.f, "expression in z")->required();
    coeffs->add_option("--n", co.n, "highest coefficient index");
    coeffs->add_option("--center", co.center, "expansion center (complex expression)");
    coeffs->add_option("--radius", co.radius, "sample circle radius");
    coeffs->add_option("--samples", co.samples, "sample count (0: next pow2 >= 4(n+1))");
    coeffs->add_option("--noise", co.noise, "noise amplitude on samples");
    coeffs->add_option("--seed", co.seed, "noise seed");
    add_format(coeffs, co.format);

    DiskOpts dk;
    CLI::App* disk = app.add_subcommand("disk", "disk continuation sweep: measured vs predicted");
    disk->add_option("--f", dk.f, "expression in z");
    disk->add_option("--R", dk.R, "outer radius of analyticity");
    disk->add_option("--eps", dk.eps, "data accuracy on the unit circle");
    disk->add_option("--M", dk.M, "bound on |f| for |z| < R");
    disk->add_option("--n", dk.n, "truncation degree (default from eps and R)");
    disk->add_option("--samples", dk.samples, "sample count (0: next pow2 >= 4(n+1))");
    disk->add_option("--nx", dk.nx, "sweep points");
    disk->add_option("--arg", dk.arg, "sweep ray angle in radians");
    disk->add_option("--seed", dk.seed, "noise seed");
    add_format(disk, dk.format);

    StripOpts st;
    CLI::App* strip = app.add_subcommand("strip", "digit-fraction bounds along the half-strip axis");
    strip->add_option("--x", st.x, "single abscissa");
    strip->add_option("--x0", st.x0, "table start");
    strip->add_option("--x1", st.x1, "table end");
    strip->add_option("--nx", st.nx, "table size");
    add_format(strip, st.format);

    MapOpts mp;
    CLI::App* map = app.add_subcommand("map", "half-strip to unit-strip map and its envelope");
    map->add_option("--z", mp.z, "single point (complex expression): both map forms");
    map->add_option("--x0", mp.x0, "table start");
    map->add_option("--x1", mp.x1, "table end");
    map->add_option("--nx", mp.nx, "table size");
    add_format(map, mp.format);

    ChainOpts ch;
    CLI::App* chain = app.add_subcommand("chain", "march a series expansion along [0, L]");
    chain->add_option("--f", ch.f, "expression in z");
    chain->add_option("--L", ch.L, "chain length");
    chain->add_option("--steps", ch.steps, "number of steps");
    chain->add_option("--r", ch.r, "disk radius");
    chain->add_option("--eps0", ch.eps0, "seed accuracy");
    chain->add_flag("--noise", ch.noise, "perturb seed samples and step coefficients");
    chain->add_option("--seed", ch.seed, "noise seed");
    chain->add_option("--sup-points", ch.sup_points, "circle points per sup measurement");
    add_format(chain, ch.format);

    ChebOpts cb;
    CLI::App* cheb = app.add_subcommand("cheb", "adaptive polynomial fit on [-1, 1] and complex evaluation");
    cheb->add_option("--f", cb.f, "expression in z (real on [-1, 1])");
    cheb->add_option("--tol", cb.tol, "relative fit tolerance");
    cheb->add_option("--eval", cb.eval, "evaluation point (complex expression)");
    cheb->add_option("--grid", cb.grid, "error-field grid x0:x1:nx:y0:y1:ny (CSV output)");
    add_format(cheb, cb.format);

    IneqOpts iq;
    CLI::App* ineq = app.add_subcommand("verify-ineq", "grid search of the one-step inequality margin");
    ineq->add_option("--nr", iq.nr, "grid cells in r");
    ineq->add_option("--nh", iq.nh, "grid cells in h");
    add_format(ineq, iq.format);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        throw contin::precondition_error("cli_usage", e.what());
    }

    std::string text;
    if (headline->parsed()) text = run_headline(headline_format);
    else if (coeffs->parsed()) text = run_coeffs(co);
    else if (disk->parsed()) text = run_disk(dk);
    else if (strip->parsed()) {
        if (st.format.empty()) st.format = st.x ? "json" : "csv";
        text = run_strip(st);
    } else if (map->parsed()) {
        if (mp.format.empty()) mp.format = mp.z ? "json" : "csv";
        text = run_map(mp);
    } else if (chain->parsed()) text = run_chain(ch);
    else if (cheb->parsed()) {
        if (cb.format.empty()) cb.format = cb.grid ? "csv" : "json";
        text = run_cheb(cb);
    } else if (ineq->parsed()) text = run_verify_ineq(iq);

    write_output(text, out);
    return 0;
}

void emit_error(const std::string& code, const std::string& message) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["error"] = json{{"code", code}, {"message", message}};
    std::cerr << j.dump() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const contin::precondition_error& e) {
        emit_error(e.code(), e.what());
        return 2;
    } catch (const contin::numerical_error& e) {
        emit_error(e.code(), e.what());
        return 3;
    } catch (const std::exception& e) {
        emit_error("internal_error", e.what());
        return 3;
    }
}
