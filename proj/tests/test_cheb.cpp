#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "contin/bounds.hpp"
#include "contin/cheb.hpp"
#include "support.hpp"

using contin::ChebApprox;
using contin::Complex;
using testsupport::code_of;
using testsupport::rel;
using testsupport::u01;

namespace {

double log_f(double x) { return std::log(1.0 + x * x); }
Complex log_fc(Complex z) { return std::log(1.0 + z * z); }

double real_clenshaw(const ChebApprox& p, double x) {
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t k = p.coeffs.size() - 1; k >= 1; --k) {
        const double t = p.coeffs[k] + 2.0 * x * b1 - b2;
        b2 = b1;
        b1 = t;
    }
    return p.coeffs[0] + x * b1 - b2;
}

} // namespace

TEST_CASE("cubic is reproduced exactly, plateau at the first sampling") {
    const ChebApprox p = contin::build_cheb([](double x) { return x * x * x; }, 1e-6);
    REQUIRE(p.degree == 3);
    CHECK(std::abs(p.coeffs[0]) < 1e-14);
    CHECK(rel(p.coeffs[1], 0.75) < 1e-14);
    CHECK(std::abs(p.coeffs[2]) < 1e-14);
    CHECK(rel(p.coeffs[3], 0.25) < 1e-14);
    // degree 3 is too small for an ellipse estimate
    CHECK(code_of([&] { contin::estimate_ellipse(p); }) == "cheb_degree_too_small");
}

TEST_CASE("log(1 + x^2) at bit-level tolerance reproduces the known fit") {
    const double tol = std::ldexp(1.0, -51);
    const ChebApprox p = contin::build_cheb(log_f, tol);

    CHECK(p.degree == 38);
    CHECK(rel(p.rho_est, 2.535210013496921) < 1e-12);
    CHECK(contin::estimate_ellipse(p) == p.rho_est);

    // coefficients against the closed form: a_0 = log(rho0^2/4),
    // a_{2m} = 2(-1)^(m+1)/(m rho0^(2m)), odd ones vanish
    const double rho0 = 1.0 + std::numbers::sqrt2;
    CHECK(rel(p.coeffs[0], std::log(rho0 * rho0 / 4.0)) < 5e-14);
    double amax = 0.0;
    for (double a : p.coeffs) amax = std::max(amax, std::abs(a));
    for (int m = 1; 2 * m <= p.degree; ++m) {
        const double want = 2.0 * (m % 2 == 1 ? 1.0 : -1.0) / (m * std::pow(rho0, 2.0 * m));
        CHECK(std::abs(p.coeffs[static_cast<std::size_t>(2 * m)] - want) < 5e-15 * amax);
    }
    for (int k = 1; k <= p.degree; k += 2)
        CHECK(std::abs(p.coeffs[static_cast<std::size_t>(k)]) < 1e-15);

    CHECK(std::abs(contin::eval_cheb_complex(p, Complex{0.0, 0.0})) < 1e-15);
    const Complex at_half_i = contin::eval_cheb_complex(p, Complex{0.0, 0.5});
    CHECK(std::abs(at_half_i - Complex{std::log(0.75), 0.0}) < 5e-8);

    double sup = 0.0;
    for (int j = 0; j <= 1000; ++j) {
        const double x = -1.0 + 2.0 * j / 1000;
        sup = std::max(sup, std::abs(real_clenshaw(p, x) - log_f(x)));
    }
    CHECK(sup < 5.0 * tol);
}

TEST_CASE("residual at the construction nodes is below trimming level") {
    const double tol = std::ldexp(1.0, -51);
    const ChebApprox p = contin::build_cheb(log_f, tol);
    double amax = 0.0;
    for (double a : p.coeffs) amax = std::max(amax, std::abs(a));
    for (int j = 0; j <= 64; ++j) { // the plateau was reached at m = 64
        const double x = std::cos(std::numbers::pi * j / 64);
        CHECK(std::abs(real_clenshaw(p, x) - log_f(x)) < 1e-13 * amax);
    }
}

TEST_CASE("complex evaluation matches the real recurrence on the interval") {
    const ChebApprox p = contin::build_cheb(log_f, 1e-10);
    for (int j = 0; j <= 200; ++j) {
        const double x = -1.0 + 2.0 * j / 200;
        const Complex v = contin::eval_cheb_complex(p, Complex{x, 0.0});
        CHECK(std::abs(v.real() - real_clenshaw(p, x)) < 1e-13);
        CHECK(v.imag() == 0.0);
    }
}

TEST_CASE("spiked rational needs a tight ellipse") {
    const ChebApprox p = contin::build_cheb(
        [](double x) { return 1.0 / (1.0 + 25.0 * x * x); }, 1e-10);
    CHECK(p.degree >= 112);
    CHECK(p.degree <= 120);
    const double rho_true = (1.0 + std::sqrt(26.0)) / 5.0;
    CHECK(rel(p.rho_est, rho_true) < 0.01);

    double sup = 0.0;
    for (int j = 0; j <= 500; ++j) {
        const double x = -1.0 + 2.0 * j / 500;
        sup = std::max(sup, std::abs(real_clenshaw(p, x) - 1.0 / (1.0 + 25.0 * x * x)));
    }
    CHECK(sup < 1e-8);
}

TEST_CASE("tightening the tolerance shrinks the ellipse estimate") {
    const ChebApprox p6 = contin::build_cheb(log_f, 1e-6);
    const ChebApprox p10 = contin::build_cheb(log_f, 1e-10);
    const ChebApprox p51 = contin::build_cheb(log_f, std::ldexp(1.0, -51));
    const double rho0 = 1.0 + std::numbers::sqrt2;

    CHECK(p6.rho_est > p10.rho_est);
    CHECK(p10.rho_est > p51.rho_est);
    CHECK(p51.rho_est > rho0);
    CHECK(std::abs(p6.rho_est - 2.682696) < 1e-4);
    CHECK(std::abs(p10.rho_est - 2.610157) < 1e-4);
}

TEST_CASE("tolerances below the rounding floor certify the floor, not less") {
    // 2^-51 is exactly twice machine epsilon, the tightest realizable level
    const ChebApprox floor = contin::build_cheb(log_f, std::ldexp(1.0, -51));
    const ChebApprox below = contin::build_cheb(log_f, 2e-16);
    CHECK(below.tol == floor.tol);
    CHECK(below.degree == floor.degree);
    CHECK(below.rho_est == floor.rho_est);
    CHECK(below.coeffs == floor.coeffs);
}

TEST_CASE("measured complex error stays under the predicted level, catalog of three") {
    struct Entry {
        std::function<double(double)> fr;
        std::function<Complex(Complex)> fc;
        double tol;
    };
    const std::vector<Entry> catalog = {
        {log_f, log_fc, std::ldexp(1.0, -51)},
        {[](double x) { return 1.0 / (1.0 + 25.0 * x * x); },
         [](Complex z) { return 1.0 / (1.0 + 25.0 * z * z); }, 1e-10},
        {[](double x) { return 0.1 * std::exp(x) * std::cos(3.0 * x); },
         [](Complex z) { return 0.1 * std::exp(z) * std::cos(3.0 * z); }, 1e-10},
    };

    std::mt19937_64 gen(606);
    for (const Entry& entry : catalog) {
        const ChebApprox p = contin::build_cheb(entry.fr, entry.tol);
        REQUIRE(p.degree >= 4);
        int checked = 0;
        while (checked < 500) {
            const double rho = 1.02 + (0.9 * p.rho_est - 1.02) * u01(gen);
            const Complex z = contin::joukowski(std::polar(rho, 6.283185307179586 * u01(gen)));
            if (contin::bernstein_rho(z) >= 0.9 * p.rho_est) continue;
            const double alpha = contin::alpha_ellipse(z, p.rho_est);
            const double measured = std::abs(entry.fc(z) - contin::eval_cheb_complex(p, z));
            REQUIRE(measured <= 50.0 * std::pow(entry.tol, alpha));
            ++checked;
        }
    }
}

TEST_CASE("error field: shape, clamping, and CSV layout") {
    const ChebApprox p = contin::build_cheb(log_f, 1e-10);
    const contin::GridSpec grid{-1.0, 1.0, 3, 0.0, 2.0, 2};
    const contin::GridField field =
        contin::error_field(p, log_fc, grid);

    REQUIRE(field.measured.size() == 6);
    REQUIRE(field.predicted.size() == 6);
    // bottom row lies on [-1, 1]: full accuracy is predicted there
    for (int ix = 0; ix < 3; ++ix) CHECK(field.predicted[static_cast<std::size_t>(ix)] == 1e-10);
    // top row is far outside the estimated ellipse: prediction clamps to 1
    for (int ix = 3; ix < 6; ++ix) CHECK(field.predicted[static_cast<std::size_t>(ix)] == 1.0);

    std::ostringstream os;
    field.write_csv(os, "demo");
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "# demo");
    std::getline(is, line);
    CHECK(line == "x,y,measured,predicted");
    int rows = 0;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 6);
}

TEST_CASE("grid and build rejections") {
    const ChebApprox p = contin::build_cheb(log_f, 1e-6);
    CHECK(code_of([&] {
              contin::error_field(p, log_fc, contin::GridSpec{0, 1, 0, 0, 1, 5});
          }) == "grid_resolution_invalid");
    CHECK(code_of([&] {
              contin::error_field(p, log_fc, contin::GridSpec{0, 1, 2001, 0, 1, 5});
          }) == "grid_resolution_invalid");
    CHECK(code_of([&] {
              contin::error_field(p, log_fc, contin::GridSpec{1, 0, 5, 0, 1, 5});
          }) == "grid_extent_invalid");

    CHECK(code_of([] { contin::build_cheb([](double x) { return x; }, 0.0); }) ==
          "cheb_tol_out_of_range");
    CHECK(code_of([] { contin::build_cheb([](double x) { return x; }, 1.0); }) ==
          "cheb_tol_out_of_range");
    CHECK(code_of([] { contin::build_cheb({}, 1e-6); }) == "cheb_fn_empty");
    CHECK(code_of([] { contin::eval_cheb_complex(ChebApprox{}, Complex{0, 0}); }) ==
          "cheb_coeffs_empty");
}

TEST_CASE("a kink never plateaus") {
    CHECK(code_of([] {
              contin::build_cheb([](double x) { return std::abs(x); }, std::ldexp(1.0, -51));
          }) == "cheb_no_plateau");
}
