#pragma once

namespace rwadyn {

inline constexpr int kVersionMajor = 0;
inline constexpr int kVersionMinor = 3;
inline constexpr int kVersionPatch = 0;
inline constexpr const char* kVersionString = "0.3.0";

}  // namespace rwadyn
