#pragma once

#include <complex>
#include <span>
#include <vector>

#include "pgst/cyclo.hpp"

namespace pgst {

// Spectral data of the adjacency matrix of the unweighted path P_n with
// vertices 1..n and m = n + 1.  Eigenvalues are
//   theta_j = 2 cos(j pi / m),  j = 1..n  (strictly decreasing),
// with (unnormalized) eigenvector entries sin(k j pi / m), and the spectral
// idempotents E_j are rank one:
//   <k| E_j |l> = (2/m) sin(k j pi / m) sin(l j pi / m).
// Exact eigenvalues are carried in Q(zeta_{2m}) as zeta^j + zeta^{-j}.

struct EigenvalueRecord {
  int j;
  double numeric;
  CycloElement exact;
};

class PathSpectrum {
 public:
  explicit PathSpectrum(int n);

  int n() const { return n_; }
  int m() const { return n_ + 1; }
  double theta(int j) const;                 // 1-based
  const CycloElement& theta_exact(int j) const;
  const std::vector<EigenvalueRecord>& eigenvalues() const { return records_; }

 private:
  int n_;
  std::vector<EigenvalueRecord> records_;
};

// <k| E_j |l> for P_n.
double idempotent_entry(int n, int j, int k, int l);

// E_j applied to an amplitude vector (index i holds vertex i + 1), using the
// rank-one factorization; O(n) per call.
std::vector<std::complex<double>> idempotent_apply(
    int n, int j, std::span<const std::complex<double>> amplitudes);

// zeta_{2m}^a - zeta_{2m}^{-a} = 2i sin(a pi / m).  Carried with the 2i
// scaling; callers that need the real sine value must divide it out (only
// possible inside the field for even m).
CycloElement sin_exact(int m, long a);

}  // namespace pgst
