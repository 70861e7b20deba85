#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace pgst {

// Dense univariate polynomial over Z; the coefficient of x^i lives at index i.
// Canonical form has no trailing zero coefficients, so the zero polynomial is
// the empty vector and operator== is structural equality.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
  }

  static IntPoly monomial(std::size_t k, mpz_class scale = mpz_class(1));
  static IntPoly x_pow_minus_one(std::size_t n);

  bool is_zero() const { return coeffs_.empty(); }
  // degree() of the zero polynomial is -1
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }
  const mpz_class& coeff(std::size_t i) const;

  IntPoly& operator+=(const IntPoly& rhs);
  IntPoly& operator-=(const IntPoly& rhs);
  friend IntPoly operator+(IntPoly lhs, const IntPoly& rhs) {
    lhs += rhs;
    return lhs;
  }
  friend IntPoly operator-(IntPoly lhs, const IntPoly& rhs) {
    lhs -= rhs;
    return lhs;
  }
  friend IntPoly operator*(const IntPoly& lhs, const IntPoly& rhs);
  bool operator==(const IntPoly&) const = default;

  // Quotient by a monic divisor; throws std::domain_error if the division
  // leaves a remainder.
  IntPoly divide_exact(const IntPoly& divisor) const;
  // Remainder modulo a monic divisor.
  IntPoly mod_monic(const IntPoly& divisor) const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<mpz_class> coeffs_;
};

}  // namespace pgst
