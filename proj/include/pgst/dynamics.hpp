#pragma once

#include <utility>
#include <vector>

#include "pgst/states.hpp"

namespace pgst {

// U(t) v with U(t) = exp(i A t) for the path adjacency matrix A, evaluated
// through the spectral decomposition.  Numeric result.
PureState evolve(const PureState& v, double t);

struct TransferSample {
  double overlap;   // |<w| U(t) |v>| for normalized v, w
  double fidelity;  // overlap squared
};
TransferSample transfer_fidelity(const PureState& v, const PureState& w,
                                 double t);

struct FidelitySample {
  double t;
  double overlap;
  double fidelity;
};
std::vector<FidelitySample> fidelity_trace(const PureState& v,
                                           const PureState& w, double t_max,
                                           double dt);

// Best overlap on a [0, horizon] grid of the given step, refined locally by
// golden-section search.  Ties keep the earliest time.
struct ScanResult {
  double t_star;
  double overlap_star;
};
ScanResult scan_max_fidelity(const PureState& v, const PureState& w,
                             double horizon, double step);

// A time tau aligning every supported phase with the mirror-transfer
// pattern theta_j tau = delta + zeta_j pi (mod 2 pi), zeta_j = 1 for even j.
struct TimeSearchResult {
  double tau = 0.0;
  double delta = 0.0;
  double achieved_overlap = 0.0;
  std::vector<std::pair<int, double>> phase_errors;  // (j, wrapped residual)
  long long budget_used = 0;
  bool complete = false;
};

// Searches for a mirror-transfer time with overlap at least 1 - epsilon.
// Requires an exact-mode state whose transfer verdict is yes (refused
// otherwise).  The budget caps the number of overlap evaluations; when it
// runs out the best time found so far is returned with complete = false.
TimeSearchResult find_transfer_time(const PureState& v, double epsilon,
                                    long long budget = 1'000'000);

}  // namespace pgst
