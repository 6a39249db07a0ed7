// numfmt.hpp: locale-independent shortest round-trip number formatting

#pragma once

#include <charconv>
#include <string>

namespace rwadyn::detail {

inline std::string fmt_double(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of negative zero
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace rwadyn::detail
