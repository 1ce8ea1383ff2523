#pragma once

namespace lierkhs {
inline constexpr const char* kVersion = "0.1.0";
}
