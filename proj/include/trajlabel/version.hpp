#pragma once

namespace trajlabel {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace trajlabel
