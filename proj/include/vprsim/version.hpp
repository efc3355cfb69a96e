#pragma once

namespace vprsim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace vprsim
