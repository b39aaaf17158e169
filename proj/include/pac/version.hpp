#pragma once

namespace pac {
inline constexpr const char* kVersion = "0.1.0";
}
