#include "pgst/states.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pgst/spectrum.hpp"
#include "pgst/trig.hpp"

namespace pgst {

SupportSet::SupportSet(int m, std::vector<int> indices)
    : m_(m), indices_(std::move(indices)) {
  if (m_ < 2) throw std::invalid_argument("SupportSet: m must be at least 2");
  std::sort(indices_.begin(), indices_.end());
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] < 1 || indices_[i] >= m_)
      throw std::invalid_argument("SupportSet: index " +
                                  std::to_string(indices_[i]) + " outside 1.." +
                                  std::to_string(m_ - 1));
    if (i > 0 && indices_[i] == indices_[i - 1])
      throw std::invalid_argument("SupportSet: duplicate index " +
                                  std::to_string(indices_[i]));
  }
}

bool SupportSet::contains(int j) const {
  return std::binary_search(indices_.begin(), indices_.end(), j);
}

std::vector<int> SupportSet::excluded() const {
  std::vector<int> out;
  for (int j = 1; j < m_; ++j)
    if (!contains(j)) out.push_back(j);
  return out;
}

namespace {

void check_vertex_count(int n, std::size_t count) {
  if (n < 1) throw std::invalid_argument("path order n must be at least 1");
  if (count != static_cast<std::size_t>(n))
    throw std::invalid_argument("amplitude vector length " +
                                std::to_string(count) +
                                " does not match path order " + std::to_string(n));
}

}  // namespace

PureState PureState::vertex(int n, int a) {
  if (n < 1) throw std::invalid_argument("path order n must be at least 1");
  if (a < 1 || a > n)
    throw std::invalid_argument("vertex " + std::to_string(a) + " outside 1.." +
                                std::to_string(n));
  unsigned long N = 2UL * (n + 1);
  std::vector<CycloElement> amps(n, CycloElement::zero(N));
  amps[a - 1] = CycloElement::one(N);
  return from_exact(n, std::move(amps));
}

PureState PureState::from_exact(int n, std::vector<CycloElement> amplitudes,
                                bool amps_scaled_by_2i) {
  check_vertex_count(n, amplitudes.size());
  unsigned long N = 2UL * (n + 1);
  bool any_nonzero = false;
  for (const auto& a : amplitudes) {
    if (a.modulus() != N)
      throw std::invalid_argument("amplitude field Q(zeta_" +
                                  std::to_string(a.modulus()) +
                                  ") does not match Q(zeta_" + std::to_string(N) +
                                  ")");
    // real subfield check: a 2i-scaled amplitude must negate under conjugation
    CycloElement conj = a.conjugate();
    bool ok = amps_scaled_by_2i ? (conj == -a) : (conj == a);
    if (!ok)
      throw std::invalid_argument("exact amplitudes must lie in the real subfield");
    any_nonzero |= !a.is_zero();
  }
  if (!any_nonzero)
    throw std::invalid_argument("state must have at least one nonzero amplitude");
  std::vector<std::complex<double>> numeric(amplitudes.size());
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    std::complex<double> value = amplitudes[i].numeric_value();
    if (amps_scaled_by_2i) value /= std::complex<double>(0.0, 2.0);
    numeric[i] = value;
  }
  return PureState(n, true, amps_scaled_by_2i, std::move(amplitudes),
                   std::move(numeric));
}

PureState PureState::from_numeric(int n,
                                  std::vector<std::complex<double>> amplitudes) {
  check_vertex_count(n, amplitudes.size());
  bool any_nonzero = false;
  for (const auto& a : amplitudes) any_nonzero |= std::abs(a) != 0.0;
  if (!any_nonzero)
    throw std::invalid_argument("state must have at least one nonzero amplitude");
  return PureState(n, false, false, {}, std::move(amplitudes));
}

const std::vector<CycloElement>& PureState::exact_amplitudes() const {
  if (!exact_)
    throw std::logic_error("exact_amplitudes() on a numeric-mode state");
  return exact_amps_;
}

double PureState::norm() const {
  double sum = 0.0;
  for (const auto& a : numeric_amps_) sum += std::norm(a);
  return std::sqrt(sum);
}

PureState mirror(const PureState& v) {
  if (v.exact_mode()) {
    std::vector<CycloElement> amps(v.exact_amplitudes().rbegin(),
                                   v.exact_amplitudes().rend());
    return PureState::from_exact(v.n(), std::move(amps), v.amps_scaled_by_2i());
  }
  std::vector<std::complex<double>> amps(v.numeric_amplitudes().rbegin(),
                                         v.numeric_amplitudes().rend());
  return PureState::from_numeric(v.n(), std::move(amps));
}

bool is_parity_state(const PureState& v) {
  bool odd_used = false, even_used = false;
  if (v.exact_mode()) {
    const auto& amps = v.exact_amplitudes();
    for (int y = 1; y <= v.n(); ++y)
      if (!amps[y - 1].is_zero()) (y % 2 ? odd_used : even_used) = true;
  } else {
    for (int y = 1; y <= v.n(); ++y)
      if (std::abs(v.numeric_amplitudes()[y - 1]) != 0.0)
        (y % 2 ? odd_used : even_used) = true;
  }
  return !(odd_used && even_used);
}

CycloElement support_scalar_exact(const PureState& v, int j) {
  if (!v.exact_mode())
    throw std::invalid_argument("support_scalar_exact needs exact amplitudes");
  if (j < 1 || j > v.n())
    throw std::invalid_argument("eigenvalue index " + std::to_string(j) +
                                " outside 1.." + std::to_string(v.n()));
  long m = v.m();
  long N = 2 * m;
  const auto& amps = v.exact_amplitudes();
  std::size_t width = euler_phi(N) + N;
  std::vector<mpq_class> acc(width);
  for (long y = 1; y <= v.n(); ++y) {
    const CycloElement& beta = amps[y - 1];
    if (beta.is_zero()) continue;
    long a = (y * j) % N;
    long b = (N - a) % N;
    if (a == b) continue;  // sin vanishes identically (a = 0 or a = m)
    const auto& coords = beta.coords();
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (coords[i] == 0) continue;
      acc[i + a] += coords[i];
      acc[i + b] -= coords[i];
    }
  }
  return CycloElement::from_poly(N, std::move(acc));
}

SupportSet eigenvalue_support_exact(const PureState& v) {
  std::vector<int> indices;
  for (int j = 1; j <= v.n(); ++j)
    if (!support_scalar_exact(v, j).is_zero()) indices.push_back(j);
  return SupportSet(v.m(), std::move(indices));
}

SupportSet eigenvalue_support_numeric(const PureState& v, double tol) {
  long long m = v.m();
  const auto& amps = v.numeric_amplitudes();
  double scale = v.norm();
  std::vector<int> indices;
  for (int j = 1; j <= v.n(); ++j) {
    std::complex<double> scalar = 0.0;
    for (long long y = 1; y <= v.n(); ++y)
      scalar += amps[y - 1] * sin_pi_frac(y * j, m);
    if (std::abs(scalar) >= tol * scale) indices.push_back(j);
  }
  return SupportSet(v.m(), std::move(indices));
}

namespace {

struct PairProjections {
  // spectral pairings S_j = sum_y amps_y sin(y j pi / m) of both states,
  // computed on unit-normalized numeric amplitudes
  std::vector<std::complex<double>> sv, sw;
  int n;
};

PairProjections pair_projections(const PureState& v, const PureState& w) {
  if (v.n() != w.n())
    throw std::invalid_argument("states live on different paths");
  PairProjections out;
  out.n = v.n();
  long long m = v.m();
  double nv = v.norm(), nw = w.norm();
  out.sv.resize(out.n);
  out.sw.resize(out.n);
  for (int j = 1; j <= out.n; ++j) {
    std::complex<double> a = 0.0, b = 0.0;
    for (long long y = 1; y <= out.n; ++y) {
      double s = sin_pi_frac(y * j, m);
      a += v.numeric_amplitudes()[y - 1] * s;
      b += w.numeric_amplitudes()[y - 1] * s;
    }
    out.sv[j - 1] = a / nv;
    out.sw[j - 1] = b / nw;
  }
  return out;
}

}  // namespace

bool check_cospectral(const PureState& v, const PureState& w, double tol) {
  auto pr = pair_projections(v, w);
  double m = v.m();
  for (int j = 1; j <= pr.n; ++j) {
    double dv = 2.0 / m * std::norm(pr.sv[j - 1]);
    double dw = 2.0 / m * std::norm(pr.sw[j - 1]);
    if (std::abs(dv - dw) > tol) return false;
  }
  return true;
}

bool check_parallel(const PureState& v, const PureState& w, double tol) {
  auto pr = pair_projections(v, w);
  long long m = v.m();
  // Cauchy-Schwarz equality of E_j v and E_j w for every j.
  for (int j = 1; j <= pr.n; ++j) {
    double u2 = 0.0;
    for (long long x = 1; x <= pr.n; ++x) {
      double s = sin_pi_frac(x * j, m);
      u2 += s * s;
    }
    double lhs = std::abs(std::conj(pr.sv[j - 1]) * pr.sw[j - 1]) * u2;
    double rhs = std::abs(pr.sv[j - 1]) * std::abs(pr.sw[j - 1]) * u2;
    if (std::abs(lhs - rhs) > tol * std::max(1.0, rhs)) return false;
  }
  return true;
}

CospectralityCertificate check_strong_cospectral(const PureState& v,
                                                 const PureState& w, double tol) {
  auto pr = pair_projections(v, w);
  CospectralityCertificate cert;
  cert.cospectral = check_cospectral(v, w, tol);
  cert.parallel = check_parallel(v, w, tol);
  bool all_classified = true;
  for (int j = 1; j <= pr.n; ++j) {
    const auto& sv = pr.sv[j - 1];
    const auto& sw = pr.sw[j - 1];
    CospectralityCertificate::Entry entry{j,
                                          CospectralityCertificate::Classification::mismatched,
                                          0.0};
    bool zv = std::abs(sv) < tol, zw = std::abs(sw) < tol;
    if (zv && zw) {
      entry.classification = CospectralityCertificate::Classification::both_zero;
    } else if (!zv && !zw) {
      std::complex<double> gamma = sv / sw;
      if (std::abs(std::abs(gamma) - 1.0) < 100 * tol &&
          std::abs(gamma.imag()) < 100 * tol) {
        entry.classification = CospectralityCertificate::Classification::matched;
        entry.gamma = gamma.real();
      } else {
        all_classified = false;
      }
    } else {
      all_classified = false;
    }
    if (entry.classification == CospectralityCertificate::Classification::mismatched)
      all_classified = false;
    cert.entries.push_back(entry);
  }
  cert.strongly_cospectral = all_classified && cert.cospectral && cert.parallel;
  return cert;
}

}  // namespace pgst
