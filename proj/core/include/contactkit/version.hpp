#pragma once

namespace contactkit {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace contactkit
