#pragma once

namespace qrg {

inline constexpr const char* kToolVersion = "0.1.0";

} // namespace qrg
