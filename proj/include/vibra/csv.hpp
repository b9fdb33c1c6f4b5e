#pragma once

#include <optional>
#include <string>

namespace vibra {

/// Nine significant digits, locale independent ("%.9g").
std::string format_double(double value);

/// Empty string for an absent value.
std::string format_optional(const std::optional<double>& value);

}  // namespace vibra
