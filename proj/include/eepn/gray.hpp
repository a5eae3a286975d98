#pragma once

#include <cstdint>

namespace eepn {

/// Binary-reflected Gray code of a constellation index in [0, level).
std::uint32_t gray_encode(std::uint32_t index, int level);

/// Inverse of gray_encode.
std::uint32_t gray_decode(std::uint32_t code, int level);

}  // namespace eepn
