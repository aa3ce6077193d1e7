#pragma once

#include <cstdio>
#include <string>

namespace minds::detail {

// Reals in CSV output carry 12 significant digits.
inline std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace minds::detail
