#include "pgst/spectrum.hpp"

#include <stdexcept>
#include <string>

#include "pgst/trig.hpp"

namespace pgst {

namespace {

void check_n(int n) {
  if (n < 1) throw std::invalid_argument("path order n must be at least 1");
}

void check_eigenvalue_index(int n, int j) {
  if (j < 1 || j > n)
    throw std::invalid_argument("eigenvalue index " + std::to_string(j) +
                                " outside 1.." + std::to_string(n));
}

void check_vertex(int n, int k) {
  if (k < 1 || k > n)
    throw std::invalid_argument("vertex " + std::to_string(k) + " outside 1.." +
                                std::to_string(n));
}

}  // namespace

PathSpectrum::PathSpectrum(int n) : n_(n) {
  check_n(n);
  int m = n + 1;
  records_.reserve(n);
  for (int j = 1; j <= n; ++j) {
    CycloElement exact = CycloElement::root_power(2 * m, j) +
                         CycloElement::root_power(2 * m, 2 * m - j);
    records_.push_back({j, 2.0 * cos_pi_frac(j, m), std::move(exact)});
  }
}

double PathSpectrum::theta(int j) const {
  check_eigenvalue_index(n_, j);
  return records_[j - 1].numeric;
}

const CycloElement& PathSpectrum::theta_exact(int j) const {
  check_eigenvalue_index(n_, j);
  return records_[j - 1].exact;
}

double idempotent_entry(int n, int j, int k, int l) {
  check_n(n);
  check_eigenvalue_index(n, j);
  check_vertex(n, k);
  check_vertex(n, l);
  long long m = n + 1;
  return 2.0 / static_cast<double>(m) *
         sin_pi_frac(static_cast<long long>(k) * j, m) *
         sin_pi_frac(static_cast<long long>(l) * j, m);
}

std::vector<std::complex<double>> idempotent_apply(
    int n, int j, std::span<const std::complex<double>> amplitudes) {
  check_n(n);
  check_eigenvalue_index(n, j);
  if (amplitudes.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("amplitude vector length " +
                                std::to_string(amplitudes.size()) +
                                " does not match path order " + std::to_string(n));
  long long m = n + 1;
  std::complex<double> scalar = 0.0;
  for (int y = 1; y <= n; ++y)
    scalar += amplitudes[y - 1] * sin_pi_frac(static_cast<long long>(y) * j, m);
  scalar *= 2.0 / static_cast<double>(m);
  std::vector<std::complex<double>> out(n);
  for (int x = 1; x <= n; ++x)
    out[x - 1] = scalar * sin_pi_frac(static_cast<long long>(x) * j, m);
  return out;
}

CycloElement sin_exact(int m, long a) {
  if (m < 2) throw std::invalid_argument("sin_exact: m must be at least 2");
  long N = 2L * m;
  long r = a % N;
  if (r < 0) r += N;
  return CycloElement::root_power(N, r) - CycloElement::root_power(N, N - r);
}

}  // namespace pgst
