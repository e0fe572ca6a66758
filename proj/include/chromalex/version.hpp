#pragma once

namespace chromalex {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace chromalex
