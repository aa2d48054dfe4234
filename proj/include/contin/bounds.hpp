#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "contin/conformal.hpp"
#include "contin/errors.hpp"

namespace contin {

// Fraction of data digits that survives continuation to w in the unit strip
// (data on Re w = 0, analyticity up to Re w = 1): the recoverable-accuracy
// exponent in error <= eps^alpha.
inline double alpha_strip(double re_w) {
    detail::require(re_w > 0.0 && re_w < 1.0, "strip_point_outside",
                    "Re w must lie in the open strip (0, 1)");
    return 1.0 - re_w;
}

// Same exponent for continuation from the unit disk (data on |z| = 1) into
// |z| < R with boundedness on |z| = R.
inline double alpha_disk(double z_abs, double R) {
    detail::require(R > 1.0, "disk_R_not_gt_1", "outer radius R must exceed 1");
    detail::require(z_abs >= 1.0, "disk_point_inside_data",
                    "|z| < 1 lies inside the data circle; nothing to predict");
    detail::require(z_abs < R, "disk_point_outside",
                    "|z| must stay strictly inside the outer radius R");
    return 1.0 - std::log(z_abs) / std::log(R);
}

// Exponent along the axis of the half-strip; equals the lower envelope of
// 1 - w and shares its evaluation so the two agree to the last bit.
inline double alpha_half_strip(double x) {
    detail::require(x >= 0.0, "half_strip_x_negative", "x must be nonnegative");
    return strip_asymp_envelope(x).first;
}

// Matching upper envelope (4/pi) e^(-pi x/2); the inverse of the loss factor.
inline double beta_half_strip(double x) {
    detail::require(x >= 0.0, "half_strip_x_negative", "x must be nonnegative");
    return strip_asymp_envelope(x).second;
}

// Exponent for continuation off [-1, 1] with analyticity in the rho_max
// ellipse: alpha = 1 - log rho(z) / log rho_max.
inline double alpha_ellipse(Complex z, double rho_max) {
    detail::require(rho_max > 1.0, "ellipse_rho_max_not_gt_1",
                    "ellipse parameter rho_max must exceed 1");
    const double rho = bernstein_rho(z);
    detail::require(rho < rho_max, "ellipse_point_outside",
                    "point must lie strictly inside the rho_max ellipse");
    return 1.0 - std::log(rho) / std::log(rho_max);
}

// Decay rate of surviving digits for a disk chain of radius r and step h:
// digits(x) ~ digits(0) * exp(-eta x).
struct ChainRate {
    double r;
    double h;
    double eta;
};

inline ChainRate chain_rate(double r, double h) {
    detail::require(r > 0.0 && r <= 0.5, "chain_r_out_of_range",
                    "disk radius r must lie in (0, 1/2]");
    detail::require(h > 0.0 && h <= 0.25, "chain_h_out_of_range",
                    "step h must lie in (0, 1/4]");
    detail::require(h < 1.0 - r, "chain_overlap_violated",
                    "step h must be smaller than 1 - r so consecutive disks overlap");
    return ChainRate{r, h, (1.0 + 2.0 * h) / (r * std::log(1.0 / r))};
}

// Accuracy schedule eps_k = eps^exp(-eta x_k) along the chain.
inline std::vector<double> chain_epsilons(double eps, const ChainRate& rate,
                                          const std::vector<double>& xs) {
    detail::require(eps > 0.0 && eps < 1.0, "chain_eps_out_of_range",
                    "eps must lie in (0, 1)");
    detail::require(!xs.empty(), "chain_xs_empty", "need at least one abscissa");
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) {
        detail::require(x >= 0.0, "chain_x_negative", "abscissas must be nonnegative");
        out.push_back(std::pow(eps, std::exp(-rate.eta * x)));
    }
    return out;
}

// Minimum of LHS - RHS for the reduced one-step inequality
//   1 - log(1 + h/r)/log(1/r)  >=  exp((-h - 2h^2) / (r log(1/r)))
// over the grid r in (0, 1/2], h in (0, 1/4], offset from zero by one step.
struct IneqMargin {
    double min_margin;
    double r_at_min;
    double h_at_min;
};

inline IneqMargin verify_chain_inequality(int grid_r, int grid_h) {
    detail::require(grid_r >= 1 && grid_h >= 1, "ineq_grid_invalid",
                    "grid must have at least one cell per axis");
    IneqMargin best{std::numeric_limits<double>::infinity(), 0.0, 0.0};
    for (int i = 1; i <= grid_r; ++i) {
        const double r = 0.5 * i / grid_r;
        const double log_inv_r = std::log(1.0 / r);
        for (int j = 1; j <= grid_h; ++j) {
            const double h = 0.25 * j / grid_h;
            const double lhs = 1.0 - std::log1p(h / r) / log_inv_r;
            const double rhs = std::exp((-h - 2.0 * h * h) / (r * log_inv_r));
            const double margin = lhs - rhs;
            if (margin < best.min_margin) best = {margin, r, h};
        }
    }
    return best;
}

// Extremal function showing the digit-loss exponents are attained:
// strip geometry h(w) = eps e^(nu w) with nu = -log eps, so |h| = eps^(1-Re w);
// disk geometry g(z) = (z/R)^n, which needs eps = R^(-n) for integer n.
struct ConverseWitness {
    enum class Geometry { strip, disk };

    Geometry geometry;
    double epsilon;
    double nu_or_n;
    std::function<Complex(Complex)> eval;
};

inline ConverseWitness converse_witness(ConverseWitness::Geometry geometry, double eps,
                                        double R = 0.0) {
    detail::require(eps > 0.0 && eps < 1.0, "witness_eps_out_of_range",
                    "eps must lie in (0, 1)");
    if (geometry == ConverseWitness::Geometry::strip) {
        const double nu = -std::log(eps);
        auto eval = [eps, nu](Complex w) { return eps * std::exp(nu * w); };
        return ConverseWitness{geometry, eps, nu, eval};
    }
    detail::require(R > 1.0, "witness_R_not_gt_1", "outer radius R must exceed 1");
    const double n_exact = -std::log(eps) / std::log(R);
    const double n_rounded = std::round(n_exact);
    detail::require(n_rounded >= 1.0 &&
                        std::abs(n_exact - n_rounded) <= 1e-9 * std::max(1.0, n_exact),
                    "witness_eps_not_integer_power",
                    "disk witness needs eps = R^(-n) for a positive integer n");
    const int n = static_cast<int>(n_rounded);
    auto eval = [R, n](Complex z) {
        Complex base = z / R, acc{1.0, 0.0};
        for (int b = n; b > 0; b >>= 1, base *= base)
            if (b & 1) acc *= base;
        return acc;
    };
    return ConverseWitness{geometry, eps, n_rounded, eval};
}

// The three summary constants: worst-case amplification after crossing the
// half-strip to x = 2*pi, the end-to-end digit ratio of the optimal unit
// chain, and the axis distance that costs one decimal digit.
struct HeadlineConstants {
    double half_strip_loss_factor; // (pi/4) e^(pi^2)
    double chain_digit_ratio;      // e^(2 pi e)
    double strip_decade_length;    // (2/pi) ln 10
};

inline HeadlineConstants headline_constants() {
    const double pi = detail::pi;
    const double e = std::numbers::e;
    return HeadlineConstants{
        0.25 * pi * std::exp(pi * pi),
        std::exp(2.0 * pi * e),
        (2.0 / pi) * std::log(10.0),
    };
}

} // namespace contin
