#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <vector>

#include "doctest.h"
#include "pgst/spectrum.hpp"
#include "pgst/states.hpp"

using namespace pgst;

namespace {

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

std::vector<std::complex<double>> random_complex_amps(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  std::vector<std::complex<double>> amps(n);
  for (auto& a : amps) a = {value(rng), value(rng)};
  return amps;
}

}  // namespace

TEST_CASE("support of worked examples") {
  // |1>+|3> on P11 misses exactly theta_6
  PureState v = rational_state(11, {{1, 1}, {3, 1}});
  CHECK(eigenvalue_support_exact(v) ==
        SupportSet(12, {1, 2, 3, 4, 5, 7, 8, 9, 10, 11}));
  CHECK(eigenvalue_support_exact(v).excluded() == std::vector<int>{6});

  // |2> on P11 misses exactly theta_6 as well
  CHECK(eigenvalue_support_exact(PureState::vertex(11, 2)).excluded() ==
        std::vector<int>{6});

  // end vertex: full support on any path
  for (int n : {2, 5, 8, 16})
    CHECK(eigenvalue_support_exact(PureState::vertex(n, 1)).size() ==
          static_cast<std::size_t>(n));
}

TEST_CASE("support of the P8 combination state") {
  // |1> - |5> + |7> on P8: the pairing sum at j = 1 is
  // sin(pi/9) - sin(5pi/9) + sin(7pi/9) = sin(pi/9) + sin(2pi/9) - sin(4pi/9),
  // which vanishes, and with it j = 2, 4 and the mirrors 5, 7, 8.
  PureState v = rational_state(8, {{1, 1}, {5, -1}, {7, 1}});
  SupportSet support = eigenvalue_support_exact(v);
  CHECK(support == SupportSet(9, {3, 6}));
  CHECK(support.excluded() == std::vector<int>{1, 2, 4, 5, 7, 8});
  CHECK(eigenvalue_support_numeric(v) == support);
}

TEST_CASE("exact and numeric support agree on random exact states") {
  std::mt19937 rng(20260816);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 5 + trial % 19;
    PureState v = random_rational_state(n, rng);
    CHECK(eigenvalue_support_exact(v) == eigenvalue_support_numeric(v, 1e-9));
  }
}

TEST_CASE("support is invariant under rational rescaling") {
  std::mt19937 rng(31337);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4 + trial % 12;
    PureState v = random_rational_state(n, rng);
    const mpq_class scale(1 + trial % 7, 3);
    std::vector<CycloElement> scaled = v.exact_amplitudes();
    for (auto& a : scaled) a *= scale;
    PureState w = PureState::from_exact(n, std::move(scaled));
    CHECK(eigenvalue_support_exact(v) == eigenvalue_support_exact(w));
  }
}

TEST_CASE("mirror map reverses amplitudes") {
  PureState v = rational_state(11, {{1, 1}, {3, 1}});
  PureState w = mirror(v);
  SupportSet support_w = eigenvalue_support_exact(w);
  CHECK(support_w == eigenvalue_support_exact(v));
  CHECK(w.exact_amplitudes()[10] == v.exact_amplitudes()[0]);
  CHECK(w.exact_amplitudes()[8] == v.exact_amplitudes()[2]);
  CHECK(w.exact_amplitudes()[0].is_zero());

  // the middle vertex of an odd path is fixed
  PureState center = PureState::vertex(11, 6);
  CHECK(mirror(center).exact_amplitudes() == center.exact_amplitudes());
}

TEST_CASE("parity classification") {
  CHECK(is_parity_state(rational_state(11, {{1, 1}, {3, 1}})));
  CHECK(is_parity_state(rational_state(11, {{2, 1}, {4, -3}})));
  CHECK(!is_parity_state(rational_state(11, {{1, 1}, {2, 1}})));
  for (int k = 1; k <= 5; ++k) CHECK(is_parity_state(PureState::vertex(5, k)));
}

TEST_CASE("parity-state supports are mirror closed") {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 4 + trial % 20;
    const int m = n + 1;
    PureState v = random_rational_state(n, rng, trial % 2);
    SupportSet support = eigenvalue_support_exact(v);
    for (int j : support.indices()) CHECK(support.contains(m - j));
    // even-vertex states never see the zero eigenvalue
    if (trial % 2 == 0 && m % 2 == 0) CHECK(!support.contains(m / 2));
  }
}

TEST_CASE("mirror pairs satisfy the alternating projection identity") {
  std::mt19937 rng(555);
  for (int n = 4; n <= 50; ++n) {
    const int reps = 10;
    for (int rep = 0; rep < reps; ++rep) {
      const auto amps = random_complex_amps(n, rng);
      std::vector<std::complex<double>> reversed(amps.rbegin(), amps.rend());
      for (int j = 1; j <= n; ++j) {
        const auto ev = idempotent_apply(n, j, amps);
        const auto ew = idempotent_apply(n, j, reversed);
        const double sign = j % 2 == 1 ? 1.0 : -1.0;
        double err = 0;
        for (int k = 0; k < n; ++k) err += std::norm(ev[k] - sign * ew[k]);
        CHECK(std::sqrt(err) < 1e-10);
      }
    }
  }
}

TEST_CASE("strong cospectrality of mirror pairs") {
  std::mt19937 rng(808);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + trial % 14;
    PureState v = random_rational_state(n, rng);
    CospectralityCertificate cert = check_strong_cospectral(v, mirror(v));
    CHECK(cert.cospectral);
    CHECK(cert.parallel);
    CHECK(cert.strongly_cospectral);
    for (const auto& entry : cert.entries) {
      CHECK(entry.classification !=
            CospectralityCertificate::Classification::mismatched);
      if (entry.classification ==
          CospectralityCertificate::Classification::matched)
        CHECK(entry.gamma ==
              doctest::Approx(entry.j % 2 == 1 ? 1.0 : -1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("self-pairs are strongly cospectral with gamma = +1") {
  PureState v = rational_state(9, {{2, 1}, {5, -2}, {7, 1}});
  CospectralityCertificate cert = check_strong_cospectral(v, v);
  CHECK(cert.strongly_cospectral);
  for (const auto& entry : cert.entries)
    if (entry.classification == CospectralityCertificate::Classification::matched)
      CHECK(entry.gamma == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("P3 vertices 1 and 2 are not cospectral") {
  PureState a = PureState::vertex(3, 1);
  PureState b = PureState::vertex(3, 2);
  CHECK(!check_cospectral(a, b));
  CHECK(!check_strong_cospectral(a, b).strongly_cospectral);
}

TEST_CASE("strong cospectrality equals cospectral and parallel") {
  std::mt19937 rng(616);
  int strong_seen = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 3 + trial % 10;
    PureState v = random_rational_state(n, rng);
    PureState w = trial % 3 == 0 ? mirror(v) : random_rational_state(n, rng);
    CospectralityCertificate cert = check_strong_cospectral(v, w);
    CHECK(cert.strongly_cospectral == (cert.cospectral && cert.parallel));
    CHECK(cert.strongly_cospectral ==
          (check_cospectral(v, w) && check_parallel(v, w)));
    if (cert.strongly_cospectral) ++strong_seen;
  }
  CHECK(strong_seen > 0);
}

TEST_CASE("support scalar vanishes exactly on excluded indices") {
  PureState v = rational_state(11, {{1, 1}, {3, 1}});
  for (int j = 1; j <= 11; ++j)
    CHECK(support_scalar_exact(v, j).is_zero() == (j == 6));
}

TEST_CASE("state constructors validate their inputs") {
  CHECK_THROWS(PureState::vertex(5, 0));
  CHECK_THROWS(PureState::vertex(5, 6));
  CHECK_THROWS(PureState::from_numeric(3, {}));
  CHECK_THROWS(rational_state(4, {}));  // no nonzero amplitude
  CHECK_THROWS(SupportSet(6, {0}));
  CHECK_THROWS(SupportSet(6, {6}));
  CHECK_THROWS(SupportSet(6, {2, 2}));
}
