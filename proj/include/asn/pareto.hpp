#pragma once

#include <cstddef>
#include <span>

namespace asn {

// x dominates y: x_i >= y_i everywhere and x_j > y_j somewhere.
// Sizes must match; callers validate.
inline bool dominates(std::span<const double> x, std::span<const double> y) {
  bool strict = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < y[i]) return false;
    if (x[i] > y[i]) strict = true;
  }
  return strict;
}

}  // namespace asn
