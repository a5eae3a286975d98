#include "eepn/gray.hpp"

#include <string>

#include "eepn/core_model.hpp"
#include "eepn/error.hpp"

namespace eepn {
namespace {

void check(std::uint32_t value, int level, const char* what) {
  if (!is_supported_level(level)) {
    fail_validation("level must be a power of two >= 4, got " +
                    std::to_string(level));
  }
  if (value >= static_cast<std::uint32_t>(level)) {
    fail_validation(std::string(what) + " " + std::to_string(value) +
                    " out of range for level " + std::to_string(level));
  }
}

}  // namespace

std::uint32_t gray_encode(std::uint32_t index, int level) {
  check(index, level, "index");
  return index ^ (index >> 1);
}

std::uint32_t gray_decode(std::uint32_t code, int level) {
  check(code, level, "gray code");
  std::uint32_t index = code;
  for (std::uint32_t shift = code >> 1; shift != 0; shift >>= 1) index ^= shift;
  return index;
}

}  // namespace eepn
