#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "contin/bounds.hpp"
#include "contin/disk.hpp"
#include "contin/errors.hpp"
#include "contin/rng.hpp"
#include "contin/taylor.hpp"

namespace contin {

// Marching plan for continuing along [0, L] through unit disks centered at
// x_k = k h, carrying a truncated expansion of degree n_k whose target
// accuracy follows the schedule eps_k = eps0^exp(-eta x_k).
struct ChainConfig {
    double L;
    int n_steps;
    double h;
    double r;
    double epsilon0;
    ChainRate rate;
    std::vector<double> xs;       // k = 0..n_steps
    std::vector<double> epsilons; // schedule, strictly increasing
    std::vector<int> degrees;     // n_k = ceil(log(1/eps_k) / log(1/r))
    int sup_points = 128;
};

inline ChainConfig plan_chain(double L, int n_steps, double r, double epsilon0,
                              int sup_points = 128) {
    detail::require(L > 0.0, "chain_L_nonpositive", "chain length L must be positive");
    detail::require(n_steps >= 1, "chain_steps_invalid", "need at least one step");
    detail::require(sup_points >= 8, "chain_sup_points_invalid",
                    "sup measurement needs at least 8 circle points");

    ChainConfig cfg;
    cfg.L = L;
    cfg.n_steps = n_steps;
    cfg.h = L / n_steps;
    cfg.r = r;
    cfg.epsilon0 = epsilon0;
    cfg.rate = chain_rate(r, cfg.h);
    cfg.sup_points = sup_points;

    cfg.xs.resize(static_cast<std::size_t>(n_steps) + 1);
    for (int k = 0; k <= n_steps; ++k) cfg.xs[static_cast<std::size_t>(k)] = cfg.h * k;
    cfg.epsilons = chain_epsilons(epsilon0, cfg.rate, cfg.xs);

    const double log_inv_r = std::log(1.0 / r);
    cfg.degrees.reserve(cfg.epsilons.size());
    for (double ek : cfg.epsilons) {
        const double d = std::ceil(std::log(1.0 / ek) / log_inv_r);
        cfg.degrees.push_back(d >= 1.0 ? static_cast<int>(d) : 1);
    }
    return cfg;
}

// One march: shift the expansion at x_k to x_{k+1}, truncate to n_{k+1}, and
// (optionally) perturb coefficient j by a draw of modulus at most
// eps_{k+1} r^(-j) / (n_{k+1}+1), which keeps the injected error on the
// radius-r circle below eps_{k+1}.
inline TaylorSeries chain_step(const TaylorSeries& f_k, const ChainConfig& cfg, int k,
                               std::mt19937_64* noise_gen = nullptr) {
    detail::require(k >= 0 && k < cfg.n_steps, "chain_step_index_invalid",
                    "step index must lie in [0, n_steps)");
    detail::require(std::abs(f_k.center() - Complex{cfg.xs[static_cast<std::size_t>(k)], 0.0}) <= 1e-9,
                    "chain_step_center_mismatch",
                    "series center does not match the planned abscissa x_k");

    const int n_next = cfg.degrees[static_cast<std::size_t>(k) + 1];
    TaylorSeries shifted = recenter(f_k, Complex{cfg.h, 0.0}, n_next);

    std::vector<Complex> coeffs = shifted.coeffs();
    if (noise_gen) {
        const double eps_next = cfg.epsilons[static_cast<std::size_t>(k) + 1];
        double r_pow = 1.0;
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
            coeffs[j] += detail::disk_noise(*noise_gen, eps_next / (r_pow * (n_next + 1)));
            r_pow *= cfg.r;
        }
    }
    for (const Complex& c : coeffs)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw numerical_error("chain_coeff_overflow",
                                  "coefficients overflowed; the chain left the region of "
                                  "analyticity or boundedness");

    return TaylorSeries(Complex{cfg.xs[static_cast<std::size_t>(k) + 1], 0.0}, std::move(coeffs), 1.0);
}

struct ChainStep {
    int k;
    double x;
    double scheduled_eps;
    double measured_err;     // sup |f_{k-1} - f| on the radius-r circle about x_k
    double construction_err; // sup |f_k - f_{k-1}| there; NaN on the final step
    int degree;              // planned n_k
    double coeff_max;        // max |coefficient| of the polynomial being measured
};

struct ChainTrace {
    ChainConfig config;
    double seed_err; // sup |f_0 - f| on the radius-r circle about x_0
    std::vector<ChainStep> steps;
    bool hypotheses_ok; // seed and construction errors within schedule
    bool conclusion_ok; // measured errors within schedule
};

namespace detail {

inline double sup_on_circle(const ComplexFn& f, const TaylorSeries& s, Complex center, double r,
                            int points) {
    const double two_pi = 6.283185307179586476925286766559;
    double sup = 0.0;
    for (int j = 0; j < points; ++j) {
        const Complex z = center + std::polar(r, two_pi * j / points);
        sup = std::max(sup, std::abs(eval_taylor(s, z) - f(z)));
    }
    return sup;
}

inline double sup_diff_on_circle(const TaylorSeries& a, const TaylorSeries& b, Complex center,
                                 double r, int points) {
    const double two_pi = 6.283185307179586476925286766559;
    double sup = 0.0;
    for (int j = 0; j < points; ++j) {
        const Complex z = center + std::polar(r, two_pi * j / points);
        sup = std::max(sup, std::abs(eval_taylor(a, z) - eval_taylor(b, z)));
    }
    return sup;
}

inline double max_coeff_abs(const TaylorSeries& s) {
    double m = 0.0;
    for (const Complex& c : s.coeffs()) m = std::max(m, std::abs(c));
    return m;
}

} // namespace detail

// Full march with measured (not assumed) hypotheses: f is the truth to march
// along, assumed analytic and bounded by 1 on the union of unit disks around
// [0, L]. The seed expansion comes from circle samples of radius r about
// x_0 = 0; with noise on, the samples are perturbed at eps0/8 and every step
// injects coefficient noise at its scheduled level.
inline ChainTrace run_chain(const ComplexFn& f, const ChainConfig& cfg, bool with_noise,
                            std::uint64_t seed) {
    detail::require(static_cast<bool>(f), "chain_fn_empty", "need a function to continue");

    std::mt19937_64 gen(seed);
    const int n0 = cfg.degrees[0];
    const int N = static_cast<int>(detail::next_pow2(4 * (static_cast<std::size_t>(n0) + 1)));
    const double seed_noise = with_noise ? cfg.epsilon0 / 8.0 : 0.0;

    CircleSamples samples = noisy_samples(f, Complex{0.0, 0.0}, cfg.r, N, seed_noise, gen());
    TaylorSeries recovered = coeffs_from_circle_samples(samples, n0);
    TaylorSeries current(Complex{0.0, 0.0}, recovered.coeffs(), 1.0);

    ChainTrace trace;
    trace.config = cfg;
    trace.seed_err = detail::sup_on_circle(f, current, Complex{0.0, 0.0}, cfg.r, cfg.sup_points);
    trace.hypotheses_ok = trace.seed_err <= cfg.epsilons[0];
    trace.conclusion_ok = true;

    for (int k = 1; k <= cfg.n_steps; ++k) {
        const Complex xk{cfg.xs[static_cast<std::size_t>(k)], 0.0};
        ChainStep step;
        step.k = k;
        step.x = xk.real();
        step.scheduled_eps = cfg.epsilons[static_cast<std::size_t>(k)];
        step.measured_err = detail::sup_on_circle(f, current, xk, cfg.r, cfg.sup_points);
        step.construction_err = std::numeric_limits<double>::quiet_NaN();
        step.degree = cfg.degrees[static_cast<std::size_t>(k)];
        step.coeff_max = detail::max_coeff_abs(current);
        if (step.measured_err > step.scheduled_eps) trace.conclusion_ok = false;

        if (k < cfg.n_steps) {
            TaylorSeries next = chain_step(current, cfg, k - 1, with_noise ? &gen : nullptr);
            step.construction_err =
                detail::sup_diff_on_circle(next, current, xk, cfg.r, cfg.sup_points);
            if (step.construction_err > step.scheduled_eps) trace.hypotheses_ok = false;
            current = next;
        }
        trace.steps.push_back(step);
    }
    return trace;
}

// Least-squares slope of log(digits) against x over [x_min, x_max], where
// digits = -log10(measured_err). Returns the decay exponent (positive for
// decaying digits).
inline double fit_digit_decay(const ChainTrace& trace, double x_min, double x_max) {
    std::vector<double> xs, ys;
    for (const ChainStep& s : trace.steps) {
        if (s.x < x_min || s.x > x_max || !(s.measured_err > 0.0)) continue;
        const double digits = -std::log10(s.measured_err);
        if (digits <= 0.0) continue;
        xs.push_back(s.x);
        ys.push_back(std::log(digits));
    }
    detail::require(xs.size() >= 2, "fit_too_few_points",
                    "digit-decay fit needs at least two usable steps in the window");

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(xs.size());
    for (std::size_t j = 0; j < xs.size(); ++j) {
        sx += xs[j];
        sy += ys[j];
        sxx += xs[j] * xs[j];
        sxy += xs[j] * ys[j];
    }
    return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace contin
