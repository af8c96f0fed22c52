#pragma once

namespace okflow {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace okflow
