#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>

namespace ghostsym {

// Exact rational arithmetic for the real sort; doubles convert exactly
// (every finite double is a binary rational).
using Rat = mpq_class;

inline Rat rat_from_double(double d) {
  Rat r;
  if (!std::isfinite(d)) return Rat(0);
  r = d;  // mpq_class(double) is exact for finite values
  r.canonicalize();
  return r;
}

inline double rat_to_double(const Rat& r) { return r.get_d(); }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

// Parses "123", "-4.5", "1.0e300" style decimal text exactly.
Rat rat_from_decimal(const std::string& text);

std::string rat_to_string(const Rat& r);

}  // namespace ghostsym
