#pragma once

#include <string>
#include <vector>

namespace psnads {

/// Decimal formatting with 17 significant digits (round-trip exact for double).
std::string format_double(double x);

/// One CSV row, newline-terminated.
std::string csv_row(const std::vector<std::string>& cells);

std::string csv_row_numeric(const std::vector<double>& cells);

}  // namespace psnads
