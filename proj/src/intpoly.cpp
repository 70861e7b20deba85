#include "pgst/intpoly.hpp"

#include <sstream>
#include <stdexcept>

namespace pgst {

namespace {
const mpz_class kZero = 0;
}

IntPoly IntPoly::monomial(std::size_t k, mpz_class scale) {
  if (scale == 0) return IntPoly{};
  std::vector<mpz_class> c(k + 1);
  c[k] = std::move(scale);
  return IntPoly(std::move(c));
}

IntPoly IntPoly::x_pow_minus_one(std::size_t n) {
  std::vector<mpz_class> c(n + 1);
  c[0] = -1;
  c[n] = 1;
  return IntPoly(std::move(c));
}

const mpz_class& IntPoly::coeff(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : kZero;
}

void IntPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPoly& IntPoly::operator+=(const IntPoly& rhs) {
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& rhs) {
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

IntPoly operator*(const IntPoly& lhs, const IntPoly& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return IntPoly{};
  std::vector<mpz_class> prod(lhs.coeffs_.size() + rhs.coeffs_.size() - 1);
  for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
    if (lhs.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j)
      prod[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
  }
  return IntPoly(std::move(prod));
}

IntPoly IntPoly::divide_exact(const IntPoly& divisor) const {
  if (!divisor.is_monic())
    throw std::domain_error("divide_exact: divisor must be monic");
  if (is_zero()) return IntPoly{};
  long dd = divisor.degree();
  long dn = degree();
  if (dn < dd) throw std::domain_error("divide_exact: inexact division");
  std::vector<mpz_class> rem = coeffs_;
  std::vector<mpz_class> quot(dn - dd + 1);
  for (long d = dn; d >= dd; --d) {
    mpz_class c = rem[d];
    if (c == 0) continue;
    quot[d - dd] = c;
    for (long i = 0; i <= dd; ++i) rem[d - dd + i] -= c * divisor.coeffs_[i];
  }
  for (const auto& r : rem)
    if (r != 0) throw std::domain_error("divide_exact: inexact division");
  return IntPoly(std::move(quot));
}

IntPoly IntPoly::mod_monic(const IntPoly& divisor) const {
  if (!divisor.is_monic())
    throw std::domain_error("mod_monic: divisor must be monic");
  long dd = divisor.degree();
  std::vector<mpz_class> rem = coeffs_;
  for (long d = degree(); d >= dd; --d) {
    mpz_class c = rem[d];
    if (c == 0) continue;
    for (long i = 0; i <= dd; ++i) rem[d - dd + i] -= c * divisor.coeffs_[i];
  }
  rem.resize(dd > 0 ? dd : 0);
  return IntPoly(std::move(rem));
}

std::string IntPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (long d = degree(); d >= 0; --d) {
    const mpz_class& c = coeffs_[d];
    if (c == 0) continue;
    mpz_class a = abs(c);
    if (first) {
      if (c < 0) out << "-";
      first = false;
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    if (a != 1 || d == 0) out << a.get_str();
    if (d > 0) {
      out << var;
      if (d > 1) out << "^" << d;
    }
  }
  return out.str();
}

}  // namespace pgst
