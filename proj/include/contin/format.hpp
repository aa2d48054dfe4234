#pragma once

#include <cstdio>
#include <string>

namespace contin::detail {

// 17 significant digits: enough to round-trip any double, and cheap to keep
// byte-stable across runs.
inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace contin::detail
