#include "pgst/cyclo.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace pgst {

unsigned long euler_phi(unsigned long n) {
  if (n == 0) throw std::invalid_argument("euler_phi: n must be positive");
  unsigned long result = n;
  unsigned long m = n;
  for (unsigned long p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

std::vector<unsigned long> divisors(unsigned long n) {
  if (n == 0) throw std::invalid_argument("divisors: n must be positive");
  std::vector<unsigned long> small, large;
  for (unsigned long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  for (auto it = large.rbegin(); it != large.rend(); ++it) small.push_back(*it);
  return small;
}

namespace {

std::mutex g_phi_mutex;
// std::map keeps node addresses stable, so returned references survive
// later insertions.
std::map<unsigned long, IntPoly>& phi_cache() {
  static std::map<unsigned long, IntPoly> cache;
  return cache;
}

const IntPoly* phi_lookup(unsigned long N) {
  std::lock_guard<std::mutex> lock(g_phi_mutex);
  auto it = phi_cache().find(N);
  return it == phi_cache().end() ? nullptr : &it->second;
}

const IntPoly& phi_store(unsigned long N, IntPoly value) {
  std::lock_guard<std::mutex> lock(g_phi_mutex);
  return phi_cache().emplace(N, std::move(value)).first->second;
}

}  // namespace

const IntPoly& cyclotomic_polynomial(unsigned long N) {
  if (N == 0) throw std::invalid_argument("cyclotomic_polynomial: N must be positive");
  if (const IntPoly* hit = phi_lookup(N)) return *hit;
  IntPoly value;
  if (N == 1) {
    value = IntPoly(std::vector<mpz_class>{-1, 1});
  } else {
    IntPoly quotient = IntPoly::x_pow_minus_one(N);
    for (unsigned long d : divisors(N)) {
      if (d == N) continue;
      quotient = quotient.divide_exact(cyclotomic_polynomial(d));
    }
    value = std::move(quotient);
  }
  if (static_cast<unsigned long>(value.degree()) != euler_phi(N))
    throw std::logic_error("cyclotomic_polynomial: degree mismatch");
  return phi_store(N, std::move(value));
}

std::vector<mpz_class> root_power_coords(unsigned long N, long k) {
  const IntPoly& phi = cyclotomic_polynomial(N);
  long deg = phi.degree();
  long r = k % static_cast<long>(N);
  if (r < 0) r += static_cast<long>(N);
  IntPoly reduced = IntPoly::monomial(static_cast<std::size_t>(r)).mod_monic(phi);
  std::vector<mpz_class> coords(deg);
  for (long i = 0; i < deg; ++i) coords[i] = reduced.coeff(i);
  return coords;
}

CycloElement CycloElement::zero(unsigned long N) {
  return CycloElement(N, std::vector<mpq_class>(euler_phi(N)));
}

CycloElement CycloElement::one(unsigned long N) {
  auto e = zero(N);
  e.coords_[0] = 1;
  return e;
}

CycloElement CycloElement::from_rational(unsigned long N, mpq_class value) {
  auto e = zero(N);
  e.coords_[0] = std::move(value);
  return e;
}

CycloElement CycloElement::root_power(unsigned long N, long k) {
  auto ints = root_power_coords(N, k);
  std::vector<mpq_class> coords(ints.size());
  for (std::size_t i = 0; i < ints.size(); ++i) coords[i] = ints[i];
  return CycloElement(N, std::move(coords));
}

CycloElement CycloElement::from_poly(unsigned long N, std::vector<mpq_class> poly) {
  const IntPoly& phi = cyclotomic_polynomial(N);
  std::size_t deg = static_cast<std::size_t>(phi.degree());
  for (std::size_t d = poly.size(); d-- > deg;) {
    if (poly[d] == 0) continue;
    mpq_class c = std::move(poly[d]);
    poly[d] = 0;
    // subtract c * x^{d-deg} * Phi_N; the leading term cancels by construction
    for (std::size_t i = 0; i < deg; ++i)
      if (phi.coeff(i) != 0) poly[d - deg + i] -= c * mpq_class(phi.coeff(i));
  }
  poly.resize(deg);
  return CycloElement(N, std::move(poly));
}

bool CycloElement::is_zero() const {
  for (const auto& c : coords_)
    if (c != 0) return false;
  return true;
}

bool CycloElement::is_rational() const {
  for (std::size_t i = 1; i < coords_.size(); ++i)
    if (coords_[i] != 0) return false;
  return true;
}

CycloElement CycloElement::conjugate() const {
  if (modulus_ == 0)
    throw std::invalid_argument("CycloElement: uninitialized operand");
  std::vector<mpq_class> poly(modulus_);
  poly[0] = coords_[0];
  for (std::size_t i = 1; i < coords_.size(); ++i)
    poly[modulus_ - i] += coords_[i];
  return from_poly(modulus_, std::move(poly));
}

std::complex<double> CycloElement::numeric_value() const {
  std::complex<double> sum = 0.0;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] == 0) continue;
    double angle = 2.0 * std::numbers::pi * static_cast<double>(i) /
                   static_cast<double>(modulus_);
    sum += coords_[i].get_d() * std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return sum;
}

std::string CycloElement::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    const mpq_class& c = coords_[i];
    if (c == 0) continue;
    mpq_class a = abs(c);
    if (first) {
      if (c < 0) out << "-";
      first = false;
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    if (a != 1 || i == 0) out << a.get_str();
    if (i > 0) {
      out << "z";
      if (i > 1) out << "^" << i;
    }
  }
  return out.str();
}

void CycloElement::check_same_field(const CycloElement& a, const CycloElement& b) {
  if (a.modulus_ == 0 || b.modulus_ == 0)
    throw std::invalid_argument("CycloElement: uninitialized operand");
  if (a.modulus_ != b.modulus_)
    throw std::invalid_argument("CycloElement: mixed moduli " +
                                std::to_string(a.modulus_) + " and " +
                                std::to_string(b.modulus_));
}

CycloElement CycloElement::operator-() const {
  CycloElement out = *this;
  for (auto& c : out.coords_) c = -c;
  return out;
}

CycloElement& CycloElement::operator+=(const CycloElement& rhs) {
  check_same_field(*this, rhs);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += rhs.coords_[i];
  return *this;
}

CycloElement& CycloElement::operator-=(const CycloElement& rhs) {
  check_same_field(*this, rhs);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= rhs.coords_[i];
  return *this;
}

CycloElement& CycloElement::operator*=(const mpq_class& scale) {
  for (auto& c : coords_) c *= scale;
  return *this;
}

CycloElement operator*(const CycloElement& lhs, const CycloElement& rhs) {
  CycloElement::check_same_field(lhs, rhs);
  std::vector<mpq_class> prod(2 * lhs.coords_.size());
  for (std::size_t i = 0; i < lhs.coords_.size(); ++i) {
    if (lhs.coords_[i] == 0) continue;
    for (std::size_t j = 0; j < rhs.coords_.size(); ++j) {
      if (rhs.coords_[j] == 0) continue;
      prod[i + j] += lhs.coords_[i] * rhs.coords_[j];
    }
  }
  return CycloElement::from_poly(lhs.modulus_, std::move(prod));
}

}  // namespace pgst
