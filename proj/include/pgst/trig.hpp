#pragma once

#include <cmath>
#include <numbers>

namespace pgst {

// sin(a pi / m) and cos(a pi / m) with the argument reduced into [0, pi/2]
// by exact integer symmetry first, so the discrete identities the spectrum
// relies on (antisymmetry under j -> m - j, exact zeros at multiples of m)
// hold bit for bit in double precision.

inline double sin_pi_frac(long long a, long long m) {
  a %= 2 * m;
  if (a < 0) a += 2 * m;
  double sign = 1.0;
  if (a >= m) {
    a -= m;
    sign = -1.0;
  }
  if (2 * a > m) a = m - a;
  return sign * std::sin(std::numbers::pi * static_cast<double>(a) /
                         static_cast<double>(m));
}

inline double cos_pi_frac(long long a, long long m) {
  a %= 2 * m;
  if (a < 0) a += 2 * m;
  if (a > m) a = 2 * m - a;
  double sign = 1.0;
  if (2 * a > m) {
    a = m - a;
    sign = -1.0;
  }
  if (2 * a == m) return 0.0;
  return sign * std::cos(std::numbers::pi * static_cast<double>(a) /
                         static_cast<double>(m));
}

}  // namespace pgst
