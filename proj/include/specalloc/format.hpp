#pragma once

#include <string>

namespace specalloc {

/// Significant digits used for every emitted number.
inline constexpr int kSignificantDigits = 9;

/// Shortest form of `value` at 9 significant digits ("0.166666667", "0.8",
/// "10", "1e-05"). Negative zero prints as "0". Throws DomainError on
/// non-finite input.
std::string format_number(double value);

/// Like format_number but renders nan/inf instead of throwing; for messages.
std::string format_number_lenient(double value);

}  // namespace specalloc
