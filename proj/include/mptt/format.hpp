#pragma once

#include <cstdio>
#include <string>

namespace mptt {

/// Fixed 12-significant-digit formatting for every numeric output, so
/// regenerated files diff cleanly.
inline std::string fmt_num(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

}  // namespace mptt
