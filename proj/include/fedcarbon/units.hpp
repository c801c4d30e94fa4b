#pragma once

#include <string>

namespace fedcarbon {

inline constexpr double kJoulesPerKwh = 3.6e6;

// Decimal byte convention throughout: 1 KB = 1000 bytes = 8000 bits.
constexpr double kilobytes_to_bits(double kb) { return kb * 8000.0; }
constexpr double megabytes_to_bits(double mb) { return mb * 8.0e6; }
constexpr double joules_to_kwh(double joules) { return joules / kJoulesPerKwh; }

// Shortest decimal form with the given number of significant digits
// ("%.Ng"); nan/inf spelled out as "nan"/"inf"/"-inf".
std::string format_sig(double value, int significant = 6);

}  // namespace fedcarbon
