#pragma once

#include <complex>
#include <random>

namespace contin::detail {

// Uniform doubles derived from raw mt19937_64 output, not from
// std::uniform_real_distribution, so that a fixed seed gives the same byte
// stream on every standard library.
inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Uniform modulus in [0, amp], uniform angle.
inline std::complex<double> disk_noise(std::mt19937_64& gen, double amp) {
    const double m = amp * uniform01(gen);
    const double a = 6.283185307179586476925286766559 * uniform01(gen);
    return std::polar(m, a);
}

} // namespace contin::detail
