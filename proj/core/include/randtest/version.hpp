#pragma once

namespace randtest {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace randtest
