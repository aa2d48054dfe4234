#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <ostream>
#include <string_view>
#include <vector>

#include "contin/conformal.hpp"
#include "contin/errors.hpp"
#include "contin/fft.hpp"
#include "contin/format.hpp"

namespace contin {

using Complex = std::complex<double>;
using ComplexFn = std::function<Complex(Complex)>;
using RealFn = std::function<double(double)>;

// Polynomial sum a_k T_k(x) fitted on [-1, 1] to relative tolerance tol.
// rho_est = tol^(-1/degree) is the implied ellipse of analyticity: the
// geometric-decay rate the coefficients would need to reach tol at `degree`.
struct ChebApprox {
    std::vector<double> coeffs;
    int degree = 0;
    double tol = 0.0;
    double rho_est = std::numeric_limits<double>::infinity();
};

namespace detail {

// Coefficients of the degree-m interpolant through the second-kind points
// x_j = cos(pi j/m), via the even extension of the values to a length-2m
// transform (m a power of two).
inline std::vector<double> cheb_coeffs_pow2(const RealFn& f, int m) {
    std::vector<double> v(static_cast<std::size_t>(m) + 1);
    for (int j = 0; j <= m; ++j) v[static_cast<std::size_t>(j)] = f(std::cos(pi * j / m));

    std::vector<Complex> g(2 * static_cast<std::size_t>(m));
    for (int j = 0; j <= m; ++j) g[static_cast<std::size_t>(j)] = Complex{v[static_cast<std::size_t>(j)], 0.0};
    for (int j = m + 1; j < 2 * m; ++j)
        g[static_cast<std::size_t>(j)] = Complex{v[static_cast<std::size_t>(2 * m - j)], 0.0};
    fft_pow2(g);

    std::vector<double> a(static_cast<std::size_t>(m) + 1);
    for (int k = 0; k <= m; ++k) a[static_cast<std::size_t>(k)] = g[static_cast<std::size_t>(k)].real() / m;
    a[0] /= 2.0;
    a[static_cast<std::size_t>(m)] /= 2.0;
    return a;
}

} // namespace detail

// Adaptive fit: double m = 8, 16, ... until the last three coefficients drop
// below tol * max|a_k|, then trim every trailing coefficient below that
// threshold. The threshold is floored at twice machine epsilon: the transform
// itself carries that much rounding, so a smaller tol is not certifiable.
// Aborts if no plateau appears by m = 2^16.
inline ChebApprox build_cheb(const RealFn& f, double tol) {
    detail::require(static_cast<bool>(f), "cheb_fn_empty", "need a function to fit");
    detail::require(tol > 0.0 && tol < 1.0, "cheb_tol_out_of_range", "tol must lie in (0, 1)");

    const double tol_eff = std::max(tol, 2.0 * std::numeric_limits<double>::epsilon());
    for (int m = 8; m <= (1 << 16); m *= 2) {
        std::vector<double> a = detail::cheb_coeffs_pow2(f, m);
        double amax = 0.0;
        for (double ak : a) amax = std::max(amax, std::abs(ak));
        const double thr = tol_eff * amax;

        const std::size_t n = a.size();
        const bool plateau = amax == 0.0 || (std::abs(a[n - 1]) < thr && std::abs(a[n - 2]) < thr &&
                                             std::abs(a[n - 3]) < thr);
        if (!plateau) continue;

        std::size_t last = 0;
        for (std::size_t k = 0; k < n; ++k)
            if (std::abs(a[k]) >= thr) last = k;
        a.resize(last + 1);

        ChebApprox p;
        p.coeffs = std::move(a);
        p.degree = static_cast<int>(last);
        p.tol = tol_eff; // the level actually certified
        if (p.degree >= 1) p.rho_est = std::pow(tol_eff, -1.0 / p.degree);
        return p;
    }
    throw numerical_error("cheb_no_plateau",
                          "coefficients never plateaued below tol by degree 2^16");
}

// Clenshaw recurrence in complex arithmetic; valid anywhere, accurate inside
// the ellipse of analyticity.
inline Complex eval_cheb_complex(const ChebApprox& p, Complex z) {
    detail::require(!p.coeffs.empty(), "cheb_coeffs_empty", "approximation has no coefficients");
    Complex b1{0.0, 0.0}, b2{0.0, 0.0};
    for (std::size_t k = p.coeffs.size() - 1; k >= 1; --k) {
        const Complex t = p.coeffs[k] + 2.0 * z * b1 - b2;
        b2 = b1;
        b1 = t;
    }
    return p.coeffs[0] + z * b1 - b2;
}

inline double estimate_ellipse(const ChebApprox& p) {
    detail::require(p.degree >= 4, "cheb_degree_too_small",
                    "ellipse estimate needs degree at least 4");
    return std::pow(p.tol, -1.0 / p.degree);
}

struct GridSpec {
    double x0, x1;
    int nx;
    double y0, y1;
    int ny;
};

// Row-major fields over the grid (y outer, x inner): measured |f - p| and the
// predicted level tol^alpha with alpha = 1 - log rho(z)/log rho_est clamped
// to [0, 1]. Singularities of f show up as inf cells, not failures.
struct GridField {
    GridSpec grid;
    std::vector<double> measured;
    std::vector<double> predicted;

    void write_csv(std::ostream& os, std::string_view comment = {}) const {
        if (!comment.empty()) os << "# " << comment << "\n";
        os << "x,y,measured,predicted\n";
        std::size_t idx = 0;
        for (int iy = 0; iy < grid.ny; ++iy) {
            const double y = grid.ny == 1 ? grid.y0
                                          : grid.y0 + (grid.y1 - grid.y0) * iy / (grid.ny - 1);
            for (int ix = 0; ix < grid.nx; ++ix, ++idx) {
                const double x = grid.nx == 1 ? grid.x0
                                              : grid.x0 + (grid.x1 - grid.x0) * ix / (grid.nx - 1);
                os << detail::fmt17(x) << ',' << detail::fmt17(y) << ','
                   << detail::fmt17(measured[idx]) << ',' << detail::fmt17(predicted[idx]) << '\n';
            }
        }
    }
};

inline GridField error_field(const ChebApprox& p, const ComplexFn& f, const GridSpec& grid) {
    detail::require(static_cast<bool>(f), "cheb_fn_empty", "need a function to compare against");
    detail::require(grid.nx >= 1 && grid.nx <= 2000 && grid.ny >= 1 && grid.ny <= 2000,
                    "grid_resolution_invalid", "grid must be between 1x1 and 2000x2000");
    detail::require(grid.x0 <= grid.x1 && grid.y0 <= grid.y1, "grid_extent_invalid",
                    "grid extents must be ordered");

    GridField field;
    field.grid = grid;
    field.measured.reserve(static_cast<std::size_t>(grid.nx) * static_cast<std::size_t>(grid.ny));
    field.predicted.reserve(field.measured.capacity());

    const double log_rho_est = std::log(p.rho_est);
    for (int iy = 0; iy < grid.ny; ++iy) {
        const double y = grid.ny == 1 ? grid.y0 : grid.y0 + (grid.y1 - grid.y0) * iy / (grid.ny - 1);
        for (int ix = 0; ix < grid.nx; ++ix) {
            const double x = grid.nx == 1 ? grid.x0
                                          : grid.x0 + (grid.x1 - grid.x0) * ix / (grid.nx - 1);
            const Complex z{x, y};
            field.measured.push_back(std::abs(f(z) - eval_cheb_complex(p, z)));
            double alpha = 1.0 - std::log(bernstein_rho(z)) / log_rho_est;
            alpha = std::clamp(alpha, 0.0, 1.0);
            field.predicted.push_back(std::pow(p.tol, alpha));
        }
    }
    return field;
}

} // namespace contin
