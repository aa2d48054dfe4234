#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "contin/errors.hpp"
#include "contin/fft.hpp"

namespace contin {

using Complex = std::complex<double>;

// Finite Taylor expansion sum c_k (z - center)^k together with the radius of
// the disk about `center` on which the represented function is analytic and
// bounded. The radius is metadata used by error bounds; evaluation itself is
// not gated on it.
class TaylorSeries {
public:
    TaylorSeries(Complex center, std::vector<Complex> coeffs, double radius)
        : center_(center), coeffs_(std::move(coeffs)), radius_(radius) {
        detail::require(!coeffs_.empty(), "series_coeffs_empty",
                        "TaylorSeries needs at least one coefficient");
        detail::require(radius_ > 0.0, "series_radius_nonpositive",
                        "TaylorSeries radius must be positive");
    }

    Complex center() const { return center_; }
    double radius() const { return radius_; }
    const std::vector<Complex>& coeffs() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

private:
    Complex center_;
    std::vector<Complex> coeffs_;
    double radius_;
};

// Equispaced samples values[j] = f(center + radius * exp(2*pi*i*j/N)).
class CircleSamples {
public:
    CircleSamples(Complex center, double radius, std::vector<Complex> values)
        : center_(center), radius_(radius), values_(std::move(values)) {
        detail::require(!values_.empty(), "samples_empty",
                        "CircleSamples needs at least one value");
        detail::require(radius_ > 0.0, "samples_radius_nonpositive",
                        "CircleSamples radius must be positive");
    }

    Complex center() const { return center_; }
    double radius() const { return radius_; }
    const std::vector<Complex>& values() const { return values_; }
    int count() const { return static_cast<int>(values_.size()); }

private:
    Complex center_;
    double radius_;
    std::vector<Complex> values_;
};

// Horner evaluation from the highest coefficient down. Overflow propagates as
// infinity; it is not trapped here.
inline Complex eval_taylor(const TaylorSeries& s, Complex z) {
    const Complex u = z - s.center();
    const auto& c = s.coeffs();
    Complex acc = c.back();
    for (std::size_t k = c.size() - 1; k-- > 0;) acc = acc * u + c[k];
    return acc;
}

// Coefficient recovery from circle samples:
//   c_k = (1/N) sum_j values[j] * exp(-2*pi*i*j*k/N) / radius^k.
// Power-of-two N goes through the radix-2 transform; other N fall back to
// direct summation.
inline TaylorSeries coeffs_from_circle_samples(const CircleSamples& samples, int n_max) {
    detail::require(n_max >= 0, "recover_degree_negative",
                    "requested degree must be nonnegative");
    const int N = samples.count();
    detail::require(n_max < N, "recover_too_few_samples",
                    "coefficient recovery needs more samples than the requested degree");

    const auto& vals = samples.values();
    std::vector<Complex> hat;
    if (detail::is_pow2(static_cast<std::size_t>(N))) {
        hat = vals;
        detail::fft_pow2(hat);
    } else {
        hat.assign(vals.size(), Complex{0.0, 0.0});
        const double two_pi = 6.283185307179586476925286766559;
        for (int k = 0; k <= n_max; ++k) {
            Complex acc{0.0, 0.0};
            for (int j = 0; j < N; ++j)
                acc += vals[static_cast<std::size_t>(j)] *
                       std::polar(1.0, -two_pi * static_cast<double>(j) * k / N);
            hat[static_cast<std::size_t>(k)] = acc;
        }
    }

    std::vector<Complex> coeffs(static_cast<std::size_t>(n_max) + 1);
    double scale = 1.0 / static_cast<double>(N);
    for (int k = 0; k <= n_max; ++k) {
        coeffs[static_cast<std::size_t>(k)] = hat[static_cast<std::size_t>(k)] * scale;
        scale /= samples.radius();
    }
    return TaylorSeries(samples.center(), std::move(coeffs), samples.radius());
}

namespace detail {

// Pascal rows binom[j][i], 0 <= i <= j <= n, as doubles.
inline std::vector<std::vector<double>> binomial_rows(int n) {
    std::vector<std::vector<double>> b(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
        auto& row = b[static_cast<std::size_t>(j)];
        row.assign(static_cast<std::size_t>(j) + 1, 1.0);
        for (int i = 1; i < j; ++i)
            row[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(j) - 1][static_cast<std::size_t>(i) - 1] +
                                               b[static_cast<std::size_t>(j) - 1][static_cast<std::size_t>(i)];
    }
    return b;
}

} // namespace detail

// Shift of expansion point: b_i = sum_{j>=i} binom(j,i) c_j delta^(j-i),
// accumulated by Horner in delta, truncated at new_degree. The returned
// radius shrinks by |delta| so the analyticity claim stays valid.
inline TaylorSeries recenter(const TaylorSeries& s, Complex delta, int new_degree) {
    detail::require(new_degree >= 0, "recenter_degree_negative",
                    "requested degree must be nonnegative");
    detail::require(std::abs(delta) < s.radius(), "recenter_shift_too_large",
                    "recenter shift must stay strictly inside the disk of analyticity");

    const auto binom = detail::binomial_rows(s.degree());
    const auto& c = s.coeffs();
    const int deg = s.degree();

    std::vector<Complex> b(static_cast<std::size_t>(new_degree) + 1, Complex{0.0, 0.0});
    for (int i = 0; i <= new_degree && i <= deg; ++i) {
        Complex acc{0.0, 0.0};
        for (int j = deg; j >= i; --j)
            acc = acc * delta + binom[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(j)];
        b[static_cast<std::size_t>(i)] = acc;
    }
    return TaylorSeries(s.center() + delta, std::move(b), s.radius() - std::abs(delta));
}

// Geometric tail bound M * (z_abs/R)^(n+1) / (1 - z_abs/R) for coefficients
// obeying |c_k| <= M / R^k.
inline double tail_bound(double M, double R, int n, double z_abs) {
    detail::require(M > 0.0, "tail_bound_M_nonpositive", "bound M must be positive");
    detail::require(R > 0.0, "tail_bound_R_nonpositive", "radius R must be positive");
    detail::require(n >= 0, "tail_bound_degree_negative", "degree must be nonnegative");
    detail::require(z_abs >= 0.0, "tail_bound_z_negative", "|z| must be nonnegative");
    detail::require(z_abs < R, "tail_bound_z_outside",
                    "tail bound requires |z| strictly inside the coefficient radius");
    const double q = z_abs / R;
    return M * std::pow(q, n + 1) / (1.0 - q);
}

} // namespace contin
