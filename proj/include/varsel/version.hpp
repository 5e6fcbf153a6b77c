#pragma once

namespace varsel {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace varsel
