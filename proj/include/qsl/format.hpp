#pragma once

#include <optional>
#include <string>

namespace qsl {

// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

// Optional double for CSV cells: empty string when absent.
std::string format_optional(const std::optional<double>& v);

}  // namespace qsl
