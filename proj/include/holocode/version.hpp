#pragma once

namespace holocode {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace holocode
