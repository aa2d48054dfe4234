#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <utility>

#include "contin/errors.hpp"

namespace contin {

using Complex = std::complex<double>;

// Image of a half-strip point under the map onto the unit strip, with the
// intermediates kept for inspection. The corners z = +-i map to w = +-i*inf
// and are tagged instead of rejected.
struct MapPoint {
    Complex z;
    Complex u; // sinh(pi z / 2)
    Complex v; // (i - u) / (i + u)
    Complex w;
    bool at_corner = false;
};

namespace detail {

inline constexpr double pi = std::numbers::pi;

inline bool is_corner(Complex z) {
    return z.real() == 0.0 && (z.imag() == 1.0 || z.imag() == -1.0);
}

inline MapPoint corner_point(Complex z) {
    const double inf = std::numeric_limits<double>::infinity();
    MapPoint p;
    p.z = z;
    p.u = Complex{0.0, z.imag()};
    p.v = z.imag() > 0.0 ? Complex{0.0, 0.0} : Complex{inf, 0.0};
    p.w = Complex{0.0, z.imag() > 0.0 ? inf : -inf};
    p.at_corner = true;
    return p;
}

inline void check_halfstrip(Complex z) {
    require(z.real() >= 0.0 && std::abs(z.imag()) <= 1.0, "map_z_outside",
            "point must lie in the closed half-strip Re z >= 0, |Im z| <= 1");
}

} // namespace detail

// w = (-i/pi) log((i - sinh(pi z/2)) / (i + sinh(pi z/2))), principal branch.
// Accurate for moderate Re z; loses digits once sinh dominates.
inline MapPoint halfstrip_map_sinh_form(Complex z) {
    detail::check_halfstrip(z);
    if (detail::is_corner(z)) return detail::corner_point(z);
    const Complex i{0.0, 1.0};
    MapPoint p;
    p.z = z;
    p.u = std::sinh(detail::pi * z / 2.0);
    p.v = (i - p.u) / (i + p.u);
    p.w = (-i / detail::pi) * std::log(p.v);
    return p;
}

// Equivalent form w = (2i/pi) log((1 - i e^(pi z/2)) / (-i + e^(pi z/2))),
// preferred for larger Re z where the sinh form squeezes v against 1.
inline MapPoint halfstrip_map_exp_form(Complex z) {
    detail::check_halfstrip(z);
    if (detail::is_corner(z)) return detail::corner_point(z);
    const Complex i{0.0, 1.0};
    MapPoint p;
    p.z = z;
    p.u = std::sinh(detail::pi * z / 2.0);
    p.v = (i - p.u) / (i + p.u);
    const Complex E = std::exp(detail::pi * z / 2.0);
    p.w = (2.0 * i / detail::pi) * std::log((1.0 - i * E) / (-i + E));
    return p;
}

// Map from the half-strip (Re z >= 0, |Im z| <= 1) onto the unit strip
// (0 <= Re w <= 1), anchored by w(0) = 0. Form chosen by Re z.
inline MapPoint halfstrip_to_strip(Complex z) {
    return z.real() <= 1.0 ? halfstrip_map_sinh_form(z) : halfstrip_map_exp_form(z);
}

// 1 - w on the real axis, evaluated as (2/pi) atan(1 / sinh(pi x/2)) so that
// no digits are lost to cancellation. Forming w first and subtracting leaves
// only absolute accuracy ~1e-16, which is far wider than the envelope gap
// once x > 7 or so.
inline double one_minus_w(double x) {
    detail::require(x >= 0.0, "map_x_negative", "x must be nonnegative");
    if (x == 0.0) return 1.0;
    return (2.0 / detail::pi) * std::atan(1.0 / std::sinh(detail::pi * x / 2.0));
}

// Two-sided asymptotic envelope for 1 - w on the real axis:
//   lower = (4/pi) e^(-pi x/2) - (4/pi - 1) e^(-pi x),  upper = (4/pi) e^(-pi x/2).
inline std::pair<double, double> strip_asymp_envelope(double x) {
    detail::require(x >= 0.0, "map_x_negative", "x must be nonnegative");
    const double four_over_pi = 4.0 / detail::pi;
    const double upper = four_over_pi * std::exp(-detail::pi * x / 2.0);
    const double lower = upper - (four_over_pi - 1.0) * std::exp(-detail::pi * x);
    return {lower, upper};
}

inline Complex joukowski(Complex w) {
    detail::require(w != Complex{0.0, 0.0}, "joukowski_zero",
                    "joukowski map is singular at w = 0");
    return (w + 1.0 / w) / 2.0;
}

// Elliptical coordinate rho(z) = |z + sqrt(z^2 - 1)| with the branch of
// modulus >= 1; identically 1 on the interval [-1, 1].
inline double bernstein_rho(Complex z) {
    if (z.imag() == 0.0 && std::abs(z.real()) <= 1.0) return 1.0;
    const Complex s = std::sqrt(z * z - 1.0);
    // the two candidates have reciprocal moduli; pick the aligned (larger) one
    const bool aligned = z.real() * s.real() + z.imag() * s.imag() >= 0.0;
    const double rho = std::abs(aligned ? z + s : z - s);
    return std::max(rho, 1.0);
}

} // namespace contin
