#pragma once

#include <cmath>
#include <random>
#include <string>

#include "contin/errors.hpp"

namespace testsupport {

// Runs f and reports the diagnostic code it threw, or "" if it returned.
template <class F>
std::string code_of(F&& f) {
    try {
        f();
    } catch (const contin::precondition_error& e) {
        return e.code();
    } catch (const contin::numerical_error& e) {
        return e.code();
    }
    return "";
}

inline double rel(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

inline double u01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

} // namespace testsupport
