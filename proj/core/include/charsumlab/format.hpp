#pragma once

#include <cstdio>
#include <string>

namespace csl {

// Shortest float form used in every CSV column, "%.12g".
inline std::string g12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace csl
