#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <vector>

#include "pgst/intpoly.hpp"

namespace pgst {

unsigned long euler_phi(unsigned long n);
std::vector<unsigned long> divisors(unsigned long n);

// N-th cyclotomic polynomial, monic of degree phi(N), computed by recursive
// exact division of x^N - 1 and memoized.  Safe to call concurrently.
const IntPoly& cyclotomic_polynomial(unsigned long N);

// Integer power-basis coordinates of zeta_N^k modulo Phi_N (k taken mod N).
std::vector<mpz_class> root_power_coords(unsigned long N, long k);

// An element of Q(zeta_N) held in the reduced power basis
// 1, zeta, ..., zeta^{phi(N)-1}.  The reduced representation is unique, so
// is_zero() and operator== are exact tests.
class CycloElement {
 public:
  CycloElement() = default;  // modulus 0: empty sentinel, unusable in arithmetic

  static CycloElement zero(unsigned long N);
  static CycloElement one(unsigned long N);
  static CycloElement from_rational(unsigned long N, mpq_class value);
  static CycloElement root_power(unsigned long N, long k);
  // Reduce an arbitrary coefficient vector (coefficient of zeta^i at index i)
  // modulo Phi_N.
  static CycloElement from_poly(unsigned long N, std::vector<mpq_class> poly);

  unsigned long modulus() const { return modulus_; }
  const std::vector<mpq_class>& coords() const { return coords_; }

  bool is_zero() const;
  bool is_rational() const;
  // Image under zeta -> zeta^{-1} (complex conjugation on the standard
  // embedding).
  CycloElement conjugate() const;
  bool is_real() const { return *this == conjugate(); }

  // Floating evaluation at zeta_N = exp(2 pi i / N); a sanity bridge, not an
  // exactness carrier.
  std::complex<double> numeric_value() const;
  std::string to_string() const;

  CycloElement operator-() const;
  CycloElement& operator+=(const CycloElement& rhs);
  CycloElement& operator-=(const CycloElement& rhs);
  CycloElement& operator*=(const mpq_class& scale);
  friend CycloElement operator+(CycloElement lhs, const CycloElement& rhs) {
    lhs += rhs;
    return lhs;
  }
  friend CycloElement operator-(CycloElement lhs, const CycloElement& rhs) {
    lhs -= rhs;
    return lhs;
  }
  friend CycloElement operator*(const CycloElement& lhs, const CycloElement& rhs);
  friend CycloElement operator*(const mpq_class& scale, CycloElement rhs) {
    rhs *= scale;
    return rhs;
  }
  bool operator==(const CycloElement&) const = default;

 private:
  CycloElement(unsigned long N, std::vector<mpq_class> coords)
      : modulus_(N), coords_(std::move(coords)) {}
  static void check_same_field(const CycloElement& a, const CycloElement& b);

  unsigned long modulus_ = 0;
  std::vector<mpq_class> coords_;
};

}  // namespace pgst
