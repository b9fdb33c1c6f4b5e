#include "vibra/csv.hpp"

#include <cstdio>

namespace vibra {

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

std::string format_optional(const std::optional<double>& value) {
  return value ? format_double(*value) : std::string();
}

}  // namespace vibra
