#pragma once

namespace prodone {

inline constexpr const char* kVersion = "0.3.0";

}  // namespace prodone
