#include "fedcarbon/units.hpp"

#include <cmath>
#include <cstdio>

namespace fedcarbon {

std::string format_sig(double value, int significant) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (significant < 1) significant = 1;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", significant, value);
  return buf;
}

}  // namespace fedcarbon
