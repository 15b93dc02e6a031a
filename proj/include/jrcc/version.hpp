// version.hpp - library version string
#pragma once

namespace jrcc {

inline constexpr const char* kVersion = "0.1.0";

} // namespace jrcc
