#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "contin/bounds.hpp"
#include "contin/errors.hpp"
#include "contin/rng.hpp"
#include "contin/taylor.hpp"

namespace contin {

using ComplexFn = std::function<Complex(Complex)>;

// Continuation setup: data of accuracy epsilon on the unit circle, target
// function analytic and bounded by bound_M on |z| < R. The truncation degree
// defaults to n = ceil(log(1/epsilon) / log R), the point where the geometric
// tail drops below the data error.
class DiskProblem {
public:
    DiskProblem(double R, double epsilon, double bound_M = 0.5,
                std::optional<int> degree = std::nullopt)
        : R_(R), epsilon_(epsilon), bound_M_(bound_M) {
        detail::require(R_ > 1.0, "disk_R_not_gt_1", "outer radius R must exceed 1");
        detail::require(epsilon_ > 0.0 && epsilon_ < 1.0, "disk_eps_out_of_range",
                        "epsilon must lie in (0, 1)");
        detail::require(bound_M_ > 0.0, "disk_M_nonpositive", "bound M must be positive");
        if (degree) {
            detail::require(*degree >= 0, "disk_degree_negative",
                            "truncation degree must be nonnegative");
            n_ = *degree;
        } else {
            n_ = static_cast<int>(std::ceil(-std::log(epsilon_) / std::log(R_)));
        }
    }

    double R() const { return R_; }
    double epsilon() const { return epsilon_; }
    double bound_M() const { return bound_M_; }
    int n() const { return n_; }

private:
    double R_;
    double epsilon_;
    double bound_M_;
    int n_;
};

// Per-point continuation output: the value, the digit-loss prediction
// epsilon^alpha(|z|), and the two pieces of the rigorous error budget.
struct ContinuationResult {
    Complex value;
    double predicted_error;
    double sampling_bound;
    double truncation_bound;
};

// Samples f on the circle center + radius * exp(2 pi i j/N) with an i.i.d.
// perturbation per sample: modulus uniform in [0, epsilon], angle uniform.
// Fixed seed gives a bitwise-identical sample set.
inline CircleSamples noisy_samples(const ComplexFn& f, Complex center, double radius, int N,
                                   double epsilon, std::uint64_t seed) {
    detail::require(static_cast<bool>(f), "samples_fn_empty", "need a function to sample");
    detail::require(N >= 1, "samples_count_invalid", "need at least one sample");
    detail::require(radius > 0.0, "samples_radius_nonpositive", "radius must be positive");
    detail::require(epsilon >= 0.0, "samples_noise_negative",
                    "noise amplitude must be nonnegative");
    std::mt19937_64 gen(seed);
    const double two_pi = 6.283185307179586476925286766559;
    std::vector<Complex> values(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j) {
        const Complex zj = center + std::polar(radius, two_pi * j / N);
        values[static_cast<std::size_t>(j)] = f(zj) + detail::disk_noise(gen, epsilon);
    }
    return CircleSamples(center, radius, std::move(values));
}

inline CircleSamples noisy_samples(const ComplexFn& f, int N, double epsilon,
                                   std::uint64_t seed) {
    return noisy_samples(f, Complex{0.0, 0.0}, 1.0, N, epsilon, seed);
}

// Truncated expansion recovered from unit-circle data, tagged with the outer
// radius R on which the boundedness assumption lives.
inline TaylorSeries build_continuation(const CircleSamples& samples, const DiskProblem& problem) {
    detail::require(samples.center() == Complex{0.0, 0.0}, "continuation_center_not_origin",
                    "continuation data must be sampled about the origin");
    detail::require(samples.radius() == 1.0, "continuation_radius_not_unit",
                    "continuation data must be sampled on the unit circle");
    TaylorSeries recovered = coeffs_from_circle_samples(samples, problem.n());
    return TaylorSeries(recovered.center(), recovered.coeffs(), problem.R());
}

// Evaluate at z with 1 <= |z| < R and report the error budget:
//   sampling_bound   = epsilon * sum_{k<=n} |z|^k   (data error pushed through)
//   truncation_bound = M (|z|/R)^(n+1) / (1 - |z|/R)
//   predicted_error  = epsilon^alpha(|z|)           (the digit-loss law)
inline ContinuationResult continue_at(const TaylorSeries& series, const DiskProblem& problem,
                                      Complex z) {
    const double z_abs = std::abs(z);
    const double alpha = alpha_disk(z_abs, problem.R());

    double sampling = 0.0, p = 1.0;
    for (int k = 0; k <= series.degree(); ++k, p *= z_abs) sampling += p;
    sampling *= problem.epsilon();

    return ContinuationResult{
        eval_taylor(series, z),
        std::pow(problem.epsilon(), alpha),
        sampling,
        tail_bound(problem.bound_M(), problem.R(), series.degree(), z_abs),
    };
}

} // namespace contin
