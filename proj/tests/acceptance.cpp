#include <sys/wait.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pgst/cyclo.hpp"
#include "pgst/decider.hpp"
#include "pgst/dynamics.hpp"
#include "pgst/intpoly.hpp"
#include "pgst/spectrum.hpp"
#include "pgst/states.hpp"

using namespace pgst;

namespace {

constexpr double kNegativeTransferCeiling = 0.954;
constexpr double kNegativeTransferScanValue = 0.9539180076951479;

struct CliResult {
  int status;
  nlohmann::json report;
};

CliResult run_cli(const std::string& args) {
  const std::string command =
      std::string(PGST_CLI_BINARY) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) throw std::runtime_error("cannot spawn " + command);
  std::string output;
  char buffer[4096];
  while (std::size_t got = std::fread(buffer, 1, sizeof buffer, pipe))
    output.append(buffer, got);
  const int raw_status = pclose(pipe);
  CliResult result;
  result.status = WIFEXITED(raw_status) ? WEXITSTATUS(raw_status) : -1;
  if (!output.empty()) result.report = nlohmann::json::parse(output);
  return result;
}

void parallel_for(std::size_t count,
                  const std::function<void(std::size_t)>& body) {
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::string error;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        body(i);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (error.empty()) error = e.what();
      }
    }
  };
  const unsigned hw = std::thread::hardware_concurrency();
  const std::size_t threads = std::min<std::size_t>(count, hw ? hw : 2);
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& thread : pool) thread.join();
  if (!error.empty()) throw std::runtime_error(error);
}

// Transfer between |a> and its mirror on P_n in closed form: with
// n + 1 = 2^t q, q odd, transfer happens for q = 1, for the middle vertex,
// and for prime q with t <= 1 or 2^(t-1) | a.
bool vertex_transfer_expected(int n, int a) {
  const int m = n + 1;
  int t = 0;
  long q = m;
  while (q % 2 == 0) {
    q /= 2;
    ++t;
  }
  if (q == 1) return true;
  if (2 * a == m) return true;
  bool prime = true;
  for (long d = 3; d * d <= q; d += 2)
    if (q % d == 0) {
      prime = false;
      break;
    }
  if (!prime) return false;
  return t <= 1 || a % (1 << (t - 1)) == 0;
}

PureState rational_state(int n, const std::map<int, mpq_class>& amplitudes) {
  const unsigned long N = 2ul * (n + 1);
  std::vector<CycloElement> amps(n, CycloElement::zero(N));
  for (const auto& [vertex, value] : amplitudes)
    amps[vertex - 1] = CycloElement::from_rational(N, value);
  return PureState::from_exact(n, std::move(amps));
}

PureState random_rational_state(int n, std::mt19937& rng, int parity = -1) {
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);
  std::map<int, mpq_class> amplitudes;
  while (amplitudes.empty()) {
    for (int vertex = 1; vertex <= n; ++vertex) {
      if (parity >= 0 && vertex % 2 != parity) continue;
      const int a = num(rng);
      if (a == 0) continue;
      amplitudes[vertex] = mpq_class(a, den(rng));
    }
  }
  return rational_state(n, amplitudes);
}

double spectral_weight(const PureState& v, int j) {
  const auto& amps = v.numeric_amplitudes();
  std::vector<std::complex<double>> image = idempotent_apply(v.n(), j, amps);
  std::complex<double> ip = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i)
    ip += std::conj(amps[i]) * image[i];
  return ip.real() / (v.norm() * v.norm());
}

int mobius(unsigned long n) {
  int result = 1;
  for (unsigned long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

bool criterion_vertex_oracle(std::string& detail) {
  for (int n = 1; n <= 24; ++n) {
    for (int a = 1; a <= n; ++a) {
      CliResult result = run_cli("decide --n " + std::to_string(n) +
                                 " --state " + std::to_string(a) +
                                 ":1 --check-certificate");
      if (result.status != 0) {
        detail = "nonzero exit for n=" + std::to_string(n) +
                 " a=" + std::to_string(a);
        return false;
      }
      const std::string answer = result.report["results"]["answer"];
      const bool expected = vertex_transfer_expected(n, a);
      if ((answer == "yes") != expected) {
        detail = "n=" + std::to_string(n) + " a=" + std::to_string(a) +
                 " answered " + answer;
        return false;
      }
      if (result.report["results"]["certificate_verified"] != true) {
        detail = "certificate failed for n=" + std::to_string(n) +
                 " a=" + std::to_string(a);
        return false;
      }
    }
  }
  return true;
}

bool criterion_p11_example(std::string& detail) {
  PureState combo = rational_state(11, {{1, 1}, {3, 1}});
  if (eigenvalue_support_exact(combo).excluded() != std::vector<int>{6}) {
    detail = "support of |1>+|3> must exclude exactly index 6";
    return false;
  }
  if (decide_auto(combo).answer != Answer::yes) {
    detail = "|1>+|3> must admit transfer";
    return false;
  }
  for (int a : {1, 3}) {
    PgstVerdict verdict = decide_auto(PureState::vertex(11, a));
    if (verdict.answer != Answer::no) {
      detail = "|" + std::to_string(a) + "> must not admit transfer";
      return false;
    }
    if (!verify_certificate(verdict)) {
      detail = "negative certificate for |" + std::to_string(a) +
               "> failed re-verification";
      return false;
    }
  }
  return true;
}

bool criterion_decider_agreement(std::string& detail) {
  std::atomic<long> disagreements{0};
  std::mutex detail_mutex;
  auto sweep = [&](int m, bool s_form) {
    std::mt19937 rng(1000 + m);
    std::vector<PureState> states;
    states.reserve(500);
    for (int i = 0; i < 500; ++i)
      states.push_back(random_rational_state(m - 1, rng, i % 2));
    parallel_for(states.size(), [&](std::size_t i) {
      PgstVerdict special = s_form ? decide_pgst_parity_s(states[i])
                                   : decide_pgst_parity_r(states[i]);
      PgstVerdict general = decide_pgst_general(states[i]);
      if (special.answer != general.answer) {
        disagreements.fetch_add(1);
        std::lock_guard<std::mutex> lock(detail_mutex);
        if (detail.empty())
          detail = "m=" + std::to_string(m) + " state " + std::to_string(i) +
                   ": " + method_name(special.method) + " says " +
                   answer_name(special.answer) + ", general says " +
                   answer_name(general.answer);
      }
    });
  };
  for (int m : {12, 18, 20, 24}) sweep(m, true);
  for (int m : {9, 25, 27}) sweep(m, false);
  return disagreements.load() == 0;
}

bool criterion_family_sweep(std::string& detail) {
  std::atomic<long> failures{0};
  std::mutex detail_mutex;
  for (long p : {3L, 5L, 7L}) {
    for (int t : {2, 3}) {
      std::vector<FamilyInstance> family = corollary_family(p, t);
      parallel_for(family.size(), [&](std::size_t i) {
        PureState state = family_state(p, t, family[i]);
        const Answer special = decide_pgst_parity_s(state).answer;
        const Answer general = decide_pgst_general(state).answer;
        if (special != Answer::yes || general != Answer::yes) {
          failures.fetch_add(1);
          std::lock_guard<std::mutex> lock(detail_mutex);
          if (detail.empty())
            detail = "p=" + std::to_string(p) + " t=" + std::to_string(t) +
                     " a=" + std::to_string(family[i].a) +
                     " b=" + std::to_string(family[i].b) +
                     " alpha=" + std::to_string(family[i].alpha);
        }
      });
    }
  }
  return failures.load() == 0;
}

bool criterion_perfect_transfer(std::string& detail) {
  const double pi = std::numbers::pi;
  PureState v2 = PureState::vertex(2, 1);
  const double p2 = transfer_fidelity(v2, mirror(v2), pi / 2).overlap;
  PureState v3 = PureState::vertex(3, 1);
  const double p3 = transfer_fidelity(v3, mirror(v3), pi / std::sqrt(2.0)).overlap;
  if (std::abs(p2 - 1.0) > 1e-9) {
    detail = "P2 overlap at pi/2 was " + std::to_string(p2);
    return false;
  }
  if (std::abs(p3 - 1.0) > 1e-9) {
    detail = "P3 overlap at pi/sqrt(2) was " + std::to_string(p3);
    return false;
  }
  return true;
}

bool criterion_time_search(std::string& detail) {
  PureState v = rational_state(11, {{1, 1}, {3, 1}});
  TimeSearchResult result = find_transfer_time(v, 0.01);
  if (!result.complete || result.achieved_overlap < 0.99) {
    detail = "overlap " + std::to_string(result.achieved_overlap) + " after " +
             std::to_string(result.budget_used) + " evaluations";
    return false;
  }
  if (result.budget_used > 1'000'000) {
    detail = "budget exceeded: " + std::to_string(result.budget_used);
    return false;
  }
  double quadratic_loss = 0.0;
  for (const auto& [j, residual] : result.phase_errors)
    quadratic_loss += spectral_weight(v, j) * residual * residual / 2.0;
  if (result.achieved_overlap < 1.0 - quadratic_loss - 1e-6) {
    detail = "phase residuals predict at least " +
             std::to_string(1.0 - quadratic_loss) + " but overlap is " +
             std::to_string(result.achieved_overlap);
    return false;
  }
  return true;
}

bool criterion_negative_ceiling(std::string& detail) {
  PureState v = PureState::vertex(11, 1);
  ScanResult scan = scan_max_fidelity(v, mirror(v), 1e4, 1e-2);
  if (std::abs(scan.overlap_star - kNegativeTransferScanValue) > 1e-6) {
    detail = "scan drifted from the recorded value: " +
             std::to_string(scan.overlap_star);
    return false;
  }
  if (scan.overlap_star > kNegativeTransferCeiling) {
    detail = "overlap " + std::to_string(scan.overlap_star) +
             " exceeds the ceiling " + std::to_string(kNegativeTransferCeiling);
    return false;
  }
  return true;
}

bool criterion_mirror_sign_identity(std::string& detail) {
  std::mt19937 rng(7777);
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  double worst = 0.0;
  for (int n = 4; n <= 50; ++n) {
    for (int rep = 0; rep < 100; ++rep) {
      std::vector<std::complex<double>> amps(n);
      for (auto& a : amps) a = {value(rng), value(rng)};
      PureState v = PureState::from_numeric(n, std::move(amps));
      PureState w = mirror(v);
      for (int j = 1; j <= n; ++j) {
        std::vector<std::complex<double>> left =
            idempotent_apply(n, j, w.numeric_amplitudes());
        std::vector<std::complex<double>> right =
            idempotent_apply(n, j, v.numeric_amplitudes());
        const double sign = j % 2 == 1 ? 1.0 : -1.0;
        double err2 = 0.0;
        for (int k = 0; k < n; ++k) {
          const std::complex<double> diff = left[k] - sign * right[k];
          err2 += std::norm(diff);
        }
        worst = std::max(worst, std::sqrt(err2) / v.norm());
      }
    }
  }
  if (worst >= 1e-10) {
    detail = "largest mismatch " + std::to_string(worst);
    return false;
  }
  return true;
}

bool criterion_relation_identities(std::string& detail) {
  std::mt19937 rng(20260816);
  std::uniform_int_distribution<int> coefficient(-3, 3);
  for (int m : {12, 18, 24}) {
    const int step = m / 3;
    SupportSet support = [&] {
      std::vector<int> idx(m - 1);
      for (int j = 1; j < m; ++j) idx[j - 1] = j;
      return SupportSet(m, std::move(idx));
    }();
    RelationLattice lattice = relation_lattice(support);
    for (int rep = 0; rep < 50; ++rep) {
      std::vector<mpz_class> ell(m, 0);
      for (const auto& row : lattice.basis) {
        const int c = coefficient(rng);
        for (int j = 1; j < m; ++j) ell[j] += c * row[j - 1];
      }
      for (int j = 1; j <= m - step; ++j) {
        const int q = j / step;
        const int r = j % step;
        mpz_class expected = ell[m - j];
        if (r != 0) {
          const int sign = q % 2 == 0 ? 1 : -1;
          expected += sign * (ell[m - step + r] - ell[step - r]);
        }
        if (ell[j] != expected) {
          detail = "coefficient identity broke at m=" + std::to_string(m) +
                   " j=" + std::to_string(j);
          return false;
        }
      }
    }
  }

  for (int n = 2; n <= 60; ++n) {
    for (int chain = 3; chain <= n; chain += 2) {
      if (n % chain != 0) continue;
      const int k = n / chain;
      for (int a = 0; a < k; ++a) {
        double sum = 0.0;
        for (int j = 0; j < chain; ++j) {
          const double term = std::cos((a + j * k) * std::numbers::pi / n);
          sum += (j % 2 == 0) ? term : -term;
        }
        if (std::abs(sum) >= 1e-12) {
          detail = "alternating cosine sum " + std::to_string(sum) +
                   " at n=" + std::to_string(n) +
                   " chain=" + std::to_string(chain) +
                   " a=" + std::to_string(a);
          return false;
        }
      }
    }
  }
  return true;
}

bool criterion_cyclotomic_forms(std::string& detail) {
  int covered = 0;
  for (int m = 2; m <= 200; ++m) {
    auto fact = factor_path_order(m);
    if (!fact) continue;
    ++covered;
    const int step = m / static_cast<int>(fact->p);
    std::vector<mpz_class> coeffs((fact->p - 1) * step + 1, 0);
    for (long k = 0; k < fact->p; ++k)
      coeffs[k * step] = (k % 2 == 0) ? 1 : -1;
    if (cyclotomic_polynomial(2ul * m) != IntPoly(std::move(coeffs))) {
      detail = "alternating form failed at m=" + std::to_string(m);
      return false;
    }
  }
  if (covered < 80) {
    detail = "only " + std::to_string(covered) + " orders covered";
    return false;
  }

  for (unsigned long N = 1; N <= 400; ++N) {
    IntPoly numerator{{1}};
    IntPoly denominator{{1}};
    for (unsigned long d : divisors(N)) {
      const int mu = mobius(d);
      if (mu == 1)
        numerator = numerator * IntPoly::x_pow_minus_one(N / d);
      else if (mu == -1)
        denominator = denominator * IntPoly::x_pow_minus_one(N / d);
    }
    if (cyclotomic_polynomial(N) != numerator.divide_exact(denominator)) {
      detail = "division oracle failed at N=" + std::to_string(N);
      return false;
    }
  }
  return true;
}

bool criterion_support_agreement(std::string& detail) {
  std::mt19937 rng(31415);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 5 + rep % 19;
    PureState v = random_rational_state(n, rng);
    SupportSet exact = eigenvalue_support_exact(v);
    SupportSet numeric = eigenvalue_support_numeric(v, 1e-9);
    if (!(exact == numeric)) {
      detail = "supports diverged on rep " + std::to_string(rep) +
               " (n=" + std::to_string(n) + ")";
      return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* label;
    std::function<bool(std::string&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "vertex states match the closed form through the cli",
       criterion_vertex_oracle},
      {2, "P11 worked example reproduces", criterion_p11_example},
      {3, "specialized deciders agree with the general one on 500 random "
          "parity states per order",
       criterion_decider_agreement},
      {4, "two-vertex family sweep is all-yes under both deciders",
       criterion_family_sweep},
      {5, "perfect transfer times on P2 and P3", criterion_perfect_transfer},
      {6, "time search reaches 0.99 overlap on the P11 example",
       criterion_time_search},
      {7, "fidelity scan for a transfer-negative state stays below the "
          "recorded ceiling",
       criterion_negative_ceiling},
      {8, "mirror sign identity of the idempotents",
       criterion_mirror_sign_identity},
      {9, "relation coefficient identities and alternating cosine sums",
       criterion_relation_identities},
      {10, "cyclotomic closed form and division oracle",
       criterion_cyclotomic_forms},
      {11, "exact and numeric supports agree on random states",
       criterion_support_agreement},
  };

  bool all_passed = true;
  for (const auto& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool passed = false;
    try {
      passed = criterion.run(detail);
    } catch (const std::exception& e) {
      detail = e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("[%s] criterion %d: %s (%.1f s)%s%s\n",
                passed ? "PASS" : "FAIL", criterion.id, criterion.label,
                seconds, detail.empty() ? "" : " - ", detail.c_str());
    std::fflush(stdout);
    all_passed = all_passed && passed;
  }
  return all_passed ? 0 : 1;
}
