#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>

namespace eepn::csv {

/// Locale-independent, 17 significant digits.
std::string format(double value);

/// Quotes a field when it contains a comma, quote or newline.
std::string field(std::string_view text);

void write_row(std::ostream& out, std::initializer_list<std::string> fields);

}  // namespace eepn::csv
