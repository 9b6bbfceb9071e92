#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace uqd {

// Fixed-notation decimal with 12 significant digits, '.' separator. Shared
// by the CSV and report writers so files stay byte-stable.
inline std::string format_fixed12(double v) {
    if (v == 0.0) v = 0.0;  // normalize -0
    int decimals = 11;
    if (v != 0.0) {
        const int mag = static_cast<int>(std::floor(std::log10(std::fabs(v))));
        decimals = 11 - mag;
        if (decimals < 0) decimals = 0;
        if (decimals > 24) decimals = 24;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

}  // namespace uqd
