#pragma once

namespace isl {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace isl
