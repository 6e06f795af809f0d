#include "specalloc/format.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "specalloc/errors.hpp"

namespace specalloc {

std::string format_number(double value) {
  if (!std::isfinite(value)) throw DomainError("cannot emit non-finite number");
  if (value == 0.0) return "0";
  char buf[48];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, kSignificantDigits);
  if (res.ec != std::errc()) throw DomainError("number formatting failed");
  return std::string(buf, res.ptr);
}

std::string format_number_lenient(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return format_number(value);
}

}  // namespace specalloc
