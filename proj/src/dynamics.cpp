#include "pgst/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "pgst/decider.hpp"
#include "pgst/errors.hpp"
#include "pgst/lattice.hpp"
#include "pgst/trig.hpp"

namespace pgst {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Spectral pairing form of the transfer amplitude:
// <w| U(t) |v> / (|v| |w|) = sum_j c_j e^{i theta_j t}.
struct TransferCoefficients {
  std::vector<double> theta;
  std::vector<std::complex<double>> c;

  double overlap(double t) const {
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i)
      acc += c[i] * std::polar(1.0, theta[i] * t);
    return std::abs(acc);
  }
};

std::complex<double> sine_pairing(const std::vector<std::complex<double>>& amps,
                                  int j, int m) {
  std::complex<double> s = 0.0;
  for (std::size_t y = 0; y < amps.size(); ++y)
    s += amps[y] * sin_pi_frac(static_cast<long long>(y + 1) * j, m);
  return s;
}

TransferCoefficients transfer_coefficients(const PureState& v,
                                           const PureState& w) {
  if (v.n() != w.n())
    throw std::invalid_argument("transfer: states on different paths");
  const int n = v.n();
  const int m = n + 1;
  TransferCoefficients tc;
  const double scale = 2.0 / (m * v.norm() * w.norm());
  for (int j = 1; j <= n; ++j) {
    std::complex<double> sv = sine_pairing(v.numeric_amplitudes(), j, m);
    std::complex<double> sw = sine_pairing(w.numeric_amplitudes(), j, m);
    std::complex<double> cj = scale * std::conj(sw) * sv;
    if (cj == std::complex<double>(0.0, 0.0)) continue;
    tc.theta.push_back(2.0 * cos_pi_frac(j, m));
    tc.c.push_back(cj);
  }
  return tc;
}

// Golden-section ascent on [a, b]; returns the best sampled (t, value).
template <typename F>
std::pair<double, double> golden_max(F&& f, double a, double b, int iters) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  double best_t = f1 >= f2 ? x1 : x2;
  double best_f = std::max(f1, f2);
  for (int i = 0; i < iters; ++i) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
    if (f1 > best_f) {
      best_f = f1;
      best_t = x1;
    }
    if (f2 > best_f) {
      best_f = f2;
      best_t = x2;
    }
  }
  return {best_t, best_f};
}

}  // namespace

PureState evolve(const PureState& v, double t) {
  const int n = v.n();
  const int m = n + 1;
  const auto& amps = v.numeric_amplitudes();
  std::vector<std::complex<double>> out(n, 0.0);
  for (int j = 1; j <= n; ++j) {
    std::complex<double> sj = sine_pairing(amps, j, m);
    if (sj == std::complex<double>(0.0, 0.0)) continue;
    std::complex<double> factor =
        (2.0 / m) * sj * std::polar(1.0, 2.0 * cos_pi_frac(j, m) * t);
    for (int k = 1; k <= n; ++k)
      out[k - 1] += factor * sin_pi_frac(static_cast<long long>(k) * j, m);
  }
  return PureState::from_numeric(n, std::move(out));
}

TransferSample transfer_fidelity(const PureState& v, const PureState& w,
                                 double t) {
  const double overlap = transfer_coefficients(v, w).overlap(t);
  return TransferSample{overlap, overlap * overlap};
}

std::vector<FidelitySample> fidelity_trace(const PureState& v,
                                           const PureState& w, double t_max,
                                           double dt) {
  if (t_max < 0 || dt <= 0)
    throw std::invalid_argument("fidelity_trace: need t_max >= 0 and dt > 0");
  TransferCoefficients tc = transfer_coefficients(v, w);
  std::vector<FidelitySample> samples;
  const long long count = static_cast<long long>(std::floor(t_max / dt + 0.5));
  samples.reserve(count + 1);
  for (long long i = 0; i <= count; ++i) {
    const double t = i * dt;
    const double o = tc.overlap(t);
    samples.push_back(FidelitySample{t, o, o * o});
  }
  return samples;
}

ScanResult scan_max_fidelity(const PureState& v, const PureState& w,
                             double horizon, double step) {
  if (horizon <= 0 || step <= 0)
    throw std::invalid_argument("scan_max_fidelity: need horizon, step > 0");
  TransferCoefficients tc = transfer_coefficients(v, w);
  double best_t = 0.0;
  double best_o = tc.overlap(0.0);
  const long long count = static_cast<long long>(std::floor(horizon / step + 0.5));
  for (long long i = 1; i <= count; ++i) {
    const double t = i * step;
    const double o = tc.overlap(t);
    if (o > best_o) {
      best_o = o;
      best_t = t;
    }
  }
  auto [rt, ro] = golden_max([&](double t) { return tc.overlap(t); },
                             std::max(0.0, best_t - step), best_t + step, 80);
  if (ro > best_o) {
    best_o = ro;
    best_t = rt;
  }
  return ScanResult{best_t, best_o};
}

namespace {

// Denominators 1 = q_0 <= q_1 <= ... of the continued-fraction convergents
// of x, capped at qmax.
std::vector<long long> cf_denominators(double x, long long qmax) {
  std::vector<long long> qs{1};
  double y = x - std::floor(x);
  long long q_prev = 0;
  long long q_cur = 1;
  for (int i = 0; i < 60 && y > 1e-15; ++i) {
    y = 1.0 / y;
    const double a = std::floor(y);
    if (a > static_cast<double>(qmax)) break;
    const long long q_next = static_cast<long long>(a) * q_cur + q_prev;
    if (q_next > qmax || q_next <= q_cur) break;
    q_prev = q_cur;
    q_cur = q_next;
    qs.push_back(q_cur);
    y -= a;
    if (y <= 0) break;
  }
  return qs;
}

// Greedy walk through convergent steps toward frac(k x) = frac(y),
// k in [0, kmax]: the one-dimensional inhomogeneous approximation.
long long cf_walk(double x, double y, long long kmax) {
  long long k = 0;
  for (long long q : cf_denominators(x, kmax)) {
    const double r = std::remainder(q * x, 1.0);
    if (std::abs(r) < 1e-18) break;
    const double e = std::remainder(k * x - y, 1.0);
    long long steps = std::llround(-e / r);
    if (steps > 0)
      steps = std::min(steps, (kmax - k) / q);
    else
      steps = -std::min(-steps, k / q);
    k += steps * q;
  }
  return k;
}

struct Constraint {
  double theta;   // positive eigenvalue magnitude
  double target;  // phase in [0, 2 pi)
};

double wrap_nonneg(double x) {
  x = std::fmod(x, kTwoPi);
  if (x < 0) x += kTwoPi;
  return x;
}

}  // namespace

TimeSearchResult find_transfer_time(const PureState& v, double epsilon,
                                    long long budget) {
  if (epsilon <= 0)
    throw std::invalid_argument("find_transfer_time: epsilon must be positive");
  budget = std::max<long long>(budget, 1000);

  PgstVerdict verdict = decide_pgst_general(v);
  if (verdict.answer == Answer::no)
    throw refusal_error("pgst_no",
                        "the state does not admit transfer to its mirror, so "
                        "no time can approach overlap 1");
  const SupportSet& supp = verdict.support;
  const int m = supp.m();

  // The global phase delta must satisfy delta * sum(l) + pi * even_sum(l)
  // = 0 (mod 2 pi) for every relation l; checking a lattice basis suffices.
  RelationLattice lattice = relation_lattice(supp);
  std::vector<mpz_class> alpha;
  std::vector<mpz_class> rho;
  for (const auto& row : lattice.basis) {
    RelationVector rel{supp, row};
    alpha.push_back(rel.coeff_sum());
    rho.push_back(rel.even_index_sum());
  }
  bool have_delta = false;
  double delta = 0.0;
  if (std::all_of(rho.begin(), rho.end(), [](const mpz_class& r) {
        return mpz_even_p(r.get_mpz_t());
      })) {
    have_delta = true;
  }
  for (int r = 0; !have_delta && r <= 8; ++r) {
    bool ok = true;
    for (std::size_t i = 0; i < alpha.size() && ok; ++i) {
      if (!mpz_divisible_2exp_p(alpha[i].get_mpz_t(), r)) {
        ok = false;
        break;
      }
      mpz_class scaled = alpha[i] >> r;
      ok = mpz_even_p(mpz_class(scaled + rho[i]).get_mpz_t());
    }
    if (ok) {
      delta = std::numbers::pi / static_cast<double>(1 << r);
      have_delta = true;
    }
  }
  if (!have_delta)
    throw refusal_error("delta_cap_exceeded",
                        "no admissible global phase of the form 0 or pi/2^r "
                        "with r <= 8; the search cannot be set up");

  // Reduce the phase system: the zero eigenvalue and mirror partners are
  // implied by the delta congruences, and negated eigenvalues flip sign.
  std::vector<Constraint> cons;
  for (int j : supp.indices()) {
    if (2 * j == m) continue;
    if (2 * j > m && supp.contains(m - j)) continue;
    double theta = 2.0 * cos_pi_frac(j, m);
    double target = wrap_nonneg(delta + (j % 2 == 0 ? std::numbers::pi : 0.0));
    if (theta < 0) {
      theta = -theta;
      target = wrap_nonneg(-target);
    }
    cons.push_back(Constraint{theta, target});
  }
  std::sort(cons.begin(), cons.end(),
            [](const Constraint& a, const Constraint& b) {
              return a.theta > b.theta;
            });

  TransferCoefficients tc = transfer_coefficients(v, mirror(v));
  const double target_overlap = 1.0 - epsilon;
  long long used = 0;
  double best_t = 0.0;
  double best_o = -1.0;
  auto eval = [&](double t) {
    if (t < 0 || !std::isfinite(t)) return -1.0;
    ++used;
    const double o = tc.overlap(t);
    if (o > best_o) {
      best_o = o;
      best_t = t;
    }
    return o;
  };
  auto refine = [&](double center, double width) {
    if (used + 130 > budget) return;
    golden_max(eval, std::max(0.0, center - width), center + width, 60);
  };

  if (cons.empty()) {
    eval(1.0);
  } else if (cons.size() == 1) {
    const double c = cons[0].target;
    eval(c < 1e-12 ? kTwoPi / cons[0].theta : c / cons[0].theta);
  } else {
    // Tau values meeting the stiffest constraint exactly are indexed by an
    // integer k; the remaining constraints select k.
    auto tau_of_k = [&](long long k) {
      return (cons[0].target + kTwoPi * k) / cons[0].theta;
    };
    const long long kmax = 10'000'000'000LL;

    if (cons.size() == 2) {
      const double x = cons[1].theta / cons[0].theta;
      const double y =
          (cons[1].target - cons[0].target * x) / kTwoPi;
      const long long k = cf_walk(x, y, kmax);
      for (long long dk = -2; dk <= 2; ++dk)
        if (k + dk >= 0) eval(tau_of_k(k + dk));
      refine(tau_of_k(k), 1e-3);
    } else {
      // Simultaneous approximation lattice: one generator advances tau in
      // steps of h, the rest shift each phase by 2 pi; Babai rounding picks
      // a near-solution of the whole system at once.
      const std::size_t K = cons.size();
      for (double scale : {1e3, 1e5, 1e7, 1e9, 1e11, 1e13}) {
        for (double h : {1e-2, 1e-4, 1e-6}) {
          if (used + 200 > budget || best_o >= target_overlap) break;
          ZMat basis(K + 1, ZVec(K + 1, 0));
          QVec target(K + 1, 0);
          for (std::size_t i = 0; i < K; ++i) {
            basis[0][i] = static_cast<long>(std::llround(scale * h * cons[i].theta));
            basis[i + 1][i] = static_cast<long>(std::llround(scale * kTwoPi));
            target[i] = static_cast<long>(std::llround(scale * cons[i].target));
          }
          basis[0][K] = 1;
          try {
            ZVec point = nearest_plane(lll_reduce(std::move(basis)), target);
            const double u = mpz_get_d(point[K].get_mpz_t());
            for (long long du : {0LL, 1LL, -1LL, 2LL, -2LL})
              eval((u + du) * h);
            refine(u * h, h);
          } catch (const std::invalid_argument&) {
            // Degenerate scaled basis (dependent rows); skip this scale.
          }
        }
      }
    }

    // Enumeration fallback along the stiffest constraint.
    for (long long k = 0; used < budget && best_o < target_overlap; ++k)
      eval(tau_of_k(k));
  }

  for (double width : {1e-1, 1e-3, 1e-5})
    if (best_o < 1.0 - 1e-12) refine(best_t, width);

  TimeSearchResult result;
  result.tau = best_t;
  result.delta = delta;
  result.achieved_overlap = best_o;
  result.budget_used = used;
  result.complete = best_o >= target_overlap;
  for (int j : supp.indices()) {
    const double resid = std::remainder(
        2.0 * cos_pi_frac(j, m) * best_t - delta -
            (j % 2 == 0 ? std::numbers::pi : 0.0),
        kTwoPi);
    result.phase_errors.emplace_back(j, std::abs(resid));
  }
  return result;
}

}  // namespace pgst
