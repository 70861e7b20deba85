#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "pgst/cyclo.hpp"

namespace pgst {

// Sorted set of eigenvalue indices j in 1..m-1 whose idempotents act
// nontrivially on a state ("eigenvalue support").
class SupportSet {
 public:
  SupportSet(int m, std::vector<int> indices);

  int m() const { return m_; }
  int n() const { return m_ - 1; }
  const std::vector<int>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool contains(int j) const;
  std::vector<int> excluded() const;  // complement within 1..m-1

  bool operator==(const SupportSet&) const = default;

 private:
  int m_;
  std::vector<int> indices_;
};

// A pure single-excitation state on the path P_n, stored as unnormalized
// amplitudes over vertices 1..n.  Exact states carry amplitudes in the real
// subfield of Q(zeta_{2m}); a numeric embedding is always kept alongside.
//
// Sine-valued amplitudes on odd m cannot be expressed inside Q(zeta_{2m})
// directly; such states are stored with every amplitude multiplied by the
// common factor 2i (flagged by amps_scaled_by_2i), which no support, parity,
// or transfer question can see.
class PureState {
 public:
  static PureState vertex(int n, int a);
  static PureState from_exact(int n, std::vector<CycloElement> amplitudes,
                              bool amps_scaled_by_2i = false);
  static PureState from_numeric(int n, std::vector<std::complex<double>> amplitudes);

  int n() const { return n_; }
  int m() const { return n_ + 1; }
  bool exact_mode() const { return exact_; }
  bool amps_scaled_by_2i() const { return scaled_2i_; }

  // Exact amplitudes as stored (including any common 2i factor); throws for
  // numeric-mode states.
  const std::vector<CycloElement>& exact_amplitudes() const;
  // Numeric amplitudes with any common 2i factor divided out.
  const std::vector<std::complex<double>>& numeric_amplitudes() const {
    return numeric_amps_;
  }
  double norm() const;

 private:
  PureState(int n, bool exact, bool scaled, std::vector<CycloElement> ex,
            std::vector<std::complex<double>> num)
      : n_(n),
        exact_(exact),
        scaled_2i_(scaled),
        exact_amps_(std::move(ex)),
        numeric_amps_(std::move(num)) {}

  int n_;
  bool exact_;
  bool scaled_2i_;
  std::vector<CycloElement> exact_amps_;
  std::vector<std::complex<double>> numeric_amps_;
};

// Amplitudes reversed: vertex a -> n + 1 - a.
PureState mirror(const PureState& v);

// Supported only on odd vertices or only on even vertices.
bool is_parity_state(const PureState& v);

// 2i-scaled rank-one spectral pairing sum_y beta_y (zeta^{yj} - zeta^{-yj});
// zero exactly when E_j annihilates the state.
CycloElement support_scalar_exact(const PureState& v, int j);

SupportSet eigenvalue_support_exact(const PureState& v);
SupportSet eigenvalue_support_numeric(const PureState& v, double tol = 1e-9);

// Strong cospectrality data for a pair of states relative to the path
// idempotents.  gamma is meaningful for entries classified as matched.
struct CospectralityCertificate {
  enum class Classification { both_zero, matched, mismatched };
  struct Entry {
    int j;
    Classification classification;
    double gamma;
  };
  std::vector<Entry> entries;
  bool cospectral;
  bool parallel;
  bool strongly_cospectral;
};

bool check_cospectral(const PureState& v, const PureState& w, double tol = 1e-10);
bool check_parallel(const PureState& v, const PureState& w, double tol = 1e-10);
CospectralityCertificate check_strong_cospectral(const PureState& v,
                                                 const PureState& w,
                                                 double tol = 1e-10);

}  // namespace pgst
