#pragma once

namespace thetaphase {

inline constexpr const char* kVersion = "1.0.0";

} // namespace thetaphase
