// version.hpp
#pragma once

namespace parampli {

inline constexpr const char* kVersion = "0.1.0";

} // namespace parampli
