#include "pgst/decider.hpp"

#include <algorithm>
#include <stdexcept>

#include "pgst/errors.hpp"
#include "pgst/spectrum.hpp"

namespace pgst {

mpz_class RelationVector::coeff_sum() const {
  mpz_class s = 0;
  for (const auto& c : coeffs) s += c;
  return s;
}

mpz_class RelationVector::even_index_sum() const {
  mpz_class s = 0;
  const auto& idx = support.indices();
  for (std::size_t i = 0; i < idx.size(); ++i)
    if (idx[i] % 2 == 0) s += coeffs[i];
  return s;
}

bool RelationVector::parity_sum_odd() const {
  return mpz_odd_p(even_index_sum().get_mpz_t());
}

CycloElement RelationVector::theta_combination() const {
  const unsigned long N = 2UL * static_cast<unsigned long>(support.m());
  CycloElement acc = CycloElement::zero(N);
  const auto& idx = support.indices();
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (coeffs[i] == 0) continue;
    CycloElement theta = CycloElement::root_power(N, idx[i]) +
                         CycloElement::root_power(N, -idx[i]);
    acc += mpq_class(coeffs[i]) * theta;
  }
  return acc;
}

bool RelationVector::verify() const {
  return coeffs.size() == support.size() && theta_combination().is_zero();
}

RelationLattice relation_lattice(const SupportSet& support) {
  if (support.size() == 0)
    throw std::invalid_argument("relation_lattice: empty support");
  const unsigned long N = 2UL * static_cast<unsigned long>(support.m());
  ZMat w;
  w.reserve(support.size());
  for (int j : support.indices()) {
    std::vector<mpz_class> row = root_power_coords(N, j);
    std::vector<mpz_class> other = root_power_coords(N, -j);
    for (std::size_t i = 0; i < row.size(); ++i) row[i] += other[i];
    w.push_back(std::move(row));
  }
  return RelationLattice{support, left_kernel_basis(w)};
}

std::string method_name(Method method) {
  switch (method) {
    case Method::general_lattice:
      return "general_lattice";
    case Method::s_sets:
      return "s_sets";
    case Method::r_sets:
      return "r_sets";
    case Method::corollary:
      return "corollary";
  }
  throw std::logic_error("method_name: unknown method");
}

std::string answer_name(Answer answer) {
  return answer == Answer::yes ? "yes" : "no";
}

namespace {

bool is_odd_prime(long p) {
  if (p < 3 || p % 2 == 0) return false;
  for (long d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

void check_relation(const RelationVector& rel, bool want_parity_odd) {
  if (!rel.verify() || rel.coeff_sum() != 0 ||
      rel.parity_sum_odd() != want_parity_odd)
    throw std::logic_error("decider produced an invalid relation certificate");
}

mpz_class row_norm2(const ZVec& row) {
  mpz_class s = 0;
  for (const auto& c : row) s += c * c;
  return s;
}

bool row_parity_odd(const SupportSet& support, const ZVec& row) {
  const auto& idx = support.indices();
  mpz_class s = 0;
  for (std::size_t i = 0; i < idx.size(); ++i)
    if (idx[i] % 2 == 0) s += row[i];
  return mpz_odd_p(s.get_mpz_t());
}

// Restrict a coefficient vector over all indices 1..m-1 to the support
// coordinates; coefficients outside the support must vanish.
RelationVector restrict_to_support(const SupportSet& support,
                                   const std::vector<mpz_class>& full) {
  ZVec coeffs(support.size(), 0);
  const auto& idx = support.indices();
  for (std::size_t i = 0; i < idx.size(); ++i) coeffs[i] = full[idx[i]];
  mpz_class total = 0, kept = 0;
  for (int k = 1; k < support.m(); ++k) total += abs(full[k]);
  for (const auto& c : coeffs) kept += abs(c);
  if (total != kept)
    throw std::logic_error("violating relation leaks outside the support");
  return RelationVector{support, std::move(coeffs)};
}

void require_mirror_closed(const SupportSet& support) {
  for (int j : support.indices())
    if (!support.contains(support.m() - j))
      throw refusal_error("support_not_mirror_closed",
                          "support is not closed under j -> m - j; the "
                          "obstruction-set deciders need a parity state");
}

SupportSet exact_support_for_decider(const PureState& v) {
  if (!v.exact_mode())
    throw refusal_error("non_exact_state",
                        "deciding transfer needs exact amplitudes; the "
                        "eigenvalue support of a numeric state cannot be "
                        "certified");
  return eigenvalue_support_exact(v);
}

void require_parity_state(const PureState& v) {
  if (!is_parity_state(v))
    throw refusal_error("not_parity_state",
                        "the obstruction-set deciders apply to parity states "
                        "only (amplitudes on one vertex parity class)");
}

}  // namespace

std::optional<PathOrderFactorization> factor_path_order(int m) {
  if (m < 2) return std::nullopt;
  PathOrderFactorization f;
  long q = m;
  while (q % 2 == 0) {
    q /= 2;
    ++f.t;
  }
  if (q == 1) return std::nullopt;
  long p = 3;
  while (p * p <= q && q % p != 0) p += 2;
  if (q % p != 0) p = q;
  f.p = p;
  while (q % p == 0) {
    q /= p;
    ++f.s;
  }
  if (q != 1) return std::nullopt;
  return f;
}

ObstructionSets build_obstruction_sets(int m, long p) {
  if (!is_odd_prime(p))
    throw std::invalid_argument("build_obstruction_sets: p must be an odd prime");
  ObstructionSets os;
  os.m = m;
  os.p = p;
  long q = m;
  while (q % 2 == 0) {
    q /= 2;
    ++os.t;
  }
  while (q % p == 0) {
    q /= p;
    ++os.s;
  }
  if (q != 1 || os.s == 0)
    throw std::invalid_argument("build_obstruction_sets: m is not 2^t p^s");
  const int step = m / static_cast<int>(p);

  if (os.t >= 1) {
    for (int c = 1; c < step; ++c) {
      ObstructionSets::IndexSet set{c, {}};
      for (long j = 0; j < p; ++j) set.indices.push_back(c + j * step);
      os.s_sets.push_back(std::move(set));
    }
    os.s_sets.push_back(ObstructionSets::IndexSet{0, {m / 2}});
  }
  if (os.t == 0) {
    for (int c = 1; 2 * p * c < m; ++c) {
      ObstructionSets::IndexSet set{c, {}};
      for (long j = 0; j < p; ++j) set.indices.push_back(c + j * step);
      for (long j = 0; j < p; ++j) set.indices.push_back(step - c + j * step);
      std::sort(set.indices.begin(), set.indices.end());
      os.r_sets.push_back(std::move(set));
    }
  }
  return os;
}

bool s_set_even_class(const ObstructionSets::IndexSet& set, int m) {
  const int label = set.c == 0 ? m / 2 : set.c;
  return label % 2 == 0;
}

PgstVerdict decide_pgst_general(const SupportSet& support) {
  RelationLattice lattice = relation_lattice(support);

  ZMat sums;
  sums.reserve(lattice.basis.size());
  for (const auto& row : lattice.basis) {
    mpz_class s = 0;
    for (const auto& c : row) s += c;
    sums.push_back(ZVec{s});
  }
  ZMat combinations = left_kernel_basis(sums);
  ZMat sum_zero = combinations.empty()
                      ? ZMat{}
                      : hnf_canonical(zmat_mul(combinations, lattice.basis));
  if (!sum_zero.empty()) sum_zero = lll_reduce(std::move(sum_zero));

  std::size_t best = sum_zero.size();
  mpz_class best_norm = 0;
  for (std::size_t i = 0; i < sum_zero.size(); ++i) {
    if (!row_parity_odd(support, sum_zero[i])) continue;
    mpz_class norm = row_norm2(sum_zero[i]);
    if (best == sum_zero.size() || norm < best_norm) {
      best = i;
      best_norm = norm;
    }
  }

  PgstVerdict verdict{Answer::yes, Method::general_lattice, support,
                      std::nullopt, std::nullopt, "", {}};
  if (best < sum_zero.size()) {
    verdict.answer = Answer::no;
    RelationVector violator{support, sum_zero[best]};
    check_relation(violator, true);
    verdict.violating_relation = std::move(violator);
    return verdict;
  }
  for (const auto& row : sum_zero)
    check_relation(RelationVector{support, row}, false);
  verdict.sum_zero_basis = RelationLattice{support, std::move(sum_zero)};
  return verdict;
}

PgstVerdict decide_pgst_general(const PureState& v) {
  return decide_pgst_general(exact_support_for_decider(v));
}

PgstVerdict decide_pgst_parity_s(const SupportSet& support) {
  const int m = support.m();
  auto fact = factor_path_order(m);
  if (!fact || fact->t < 1)
    throw refusal_error("order_not_s_form",
                        "path order m = " + std::to_string(m) +
                            " is not 2^t p^s with t >= 1");
  require_mirror_closed(support);
  ObstructionSets os = build_obstruction_sets(m, fact->p);
  const int step = m / static_cast<int>(fact->p);

  auto contained = [&](const ObstructionSets::IndexSet& set) {
    return std::all_of(set.indices.begin(), set.indices.end(),
                       [&](int k) { return support.contains(k); });
  };
  auto missing_index = [&](const ObstructionSets::IndexSet& set) {
    for (int k : set.indices)
      if (!support.contains(k)) return k;
    throw std::logic_error("no missing index in a broken set");
  };

  const ObstructionSets::IndexSet* odd_full = nullptr;
  const ObstructionSets::IndexSet* even_full = nullptr;
  for (const auto& set : os.s_sets) {
    if (!contained(set)) continue;
    auto& slot = s_set_even_class(set, m) ? even_full : odd_full;
    if (!slot) slot = &set;
  }

  PgstVerdict verdict{Answer::yes, Method::s_sets, support,
                      std::nullopt, std::nullopt, "", {}};
  if (odd_full && even_full) {
    std::vector<mpz_class> full(m, 0);
    auto chain = [&](int c, int sign) {
      for (long j = 0; j < fact->p; ++j)
        full[c + j * step] += (j % 2 == 0) ? sign : -sign;
    };
    if (odd_full->c > 0 && even_full->c > 0) {
      chain(odd_full->c, 1);
      chain(even_full->c, -1);
    } else if (even_full->c == 0) {
      chain(odd_full->c, 1);
      full[m / 2] -= 1;
    } else {
      chain(even_full->c, -1);
      full[m / 2] += 1;
    }
    verdict.answer = Answer::no;
    RelationVector violator = restrict_to_support(support, full);
    check_relation(violator, true);
    verdict.violating_relation = std::move(violator);
    return verdict;
  }

  verdict.broken_class = !odd_full && !even_full ? "all"
                         : !odd_full             ? "odd"
                                                 : "even";
  for (const auto& set : os.s_sets) {
    const bool broken_side = s_set_even_class(set, m) ? !even_full : !odd_full;
    if (broken_side)
      verdict.witnesses.push_back(ObstructionWitness{set.c, missing_index(set)});
  }
  return verdict;
}

PgstVerdict decide_pgst_parity_s(const PureState& v) {
  SupportSet support = exact_support_for_decider(v);
  require_parity_state(v);
  return decide_pgst_parity_s(support);
}

PgstVerdict decide_pgst_parity_r(const SupportSet& support) {
  const int m = support.m();
  auto fact = factor_path_order(m);
  if (!fact || fact->t != 0)
    throw refusal_error("order_not_r_form",
                        "path order m = " + std::to_string(m) +
                            " is not an odd prime power");
  require_mirror_closed(support);
  ObstructionSets os = build_obstruction_sets(m, fact->p);
  const int step = m / static_cast<int>(fact->p);

  PgstVerdict verdict{Answer::yes, Method::r_sets, support,
                      std::nullopt, std::nullopt, "all", {}};
  for (const auto& set : os.r_sets) {
    int missing = 0;
    for (int k : set.indices)
      if (!support.contains(k)) {
        missing = k;
        break;
      }
    if (missing != 0) {
      verdict.witnesses.push_back(ObstructionWitness{set.c, missing});
      continue;
    }
    // R_c contained: the alternating residue pattern over both sub-chains.
    std::vector<mpz_class> full(m, 0);
    const int period = 2 * step;
    for (int k = 1; k < m; ++k) {
      const int r = k % period;
      if (r == set.c || r == period - set.c)
        full[k] += 1;
      else if (r == set.c + step || r == step - set.c)
        full[k] -= 1;
    }
    verdict.answer = Answer::no;
    verdict.broken_class.clear();
    verdict.witnesses.clear();
    RelationVector violator = restrict_to_support(support, full);
    check_relation(violator, true);
    verdict.violating_relation = std::move(violator);
    return verdict;
  }
  return verdict;
}

PgstVerdict decide_pgst_parity_r(const PureState& v) {
  SupportSet support = exact_support_for_decider(v);
  require_parity_state(v);
  return decide_pgst_parity_r(support);
}

PgstVerdict decide_auto(const PureState& v, int cross_check_limit) {
  SupportSet support = exact_support_for_decider(v);
  auto fact = factor_path_order(v.m());

  std::optional<PgstVerdict> special;
  if (fact && is_parity_state(v)) {
    if (fact->t >= 1)
      special = decide_pgst_parity_s(support);
    else
      special = decide_pgst_parity_r(support);
  }
  if (!special) return decide_pgst_general(support);
  if (v.n() <= cross_check_limit) {
    PgstVerdict general = decide_pgst_general(support);
    if (general.answer != special->answer)
      throw std::logic_error(
          "decider disagreement on P_" + std::to_string(v.n()) + ": " +
          method_name(special->method) + " says " +
          answer_name(special->answer) + ", general says " +
          answer_name(general.answer));
  }
  return *special;
}

bool verify_certificate(const PgstVerdict& verdict) {
  const SupportSet& support = verdict.support;
  if (verdict.answer == Answer::no) {
    if (!verdict.violating_relation) return false;
    const RelationVector& rel = *verdict.violating_relation;
    return rel.support == support && rel.verify() && rel.coeff_sum() == 0 &&
           rel.parity_sum_odd();
  }
  switch (verdict.method) {
    case Method::general_lattice: {
      if (!verdict.sum_zero_basis) return false;
      const RelationLattice& cert = *verdict.sum_zero_basis;
      if (cert.support != support) return false;
      for (const auto& row : cert.basis) {
        RelationVector rel{support, row};
        if (!rel.verify() || rel.coeff_sum() != 0 || rel.parity_sum_odd())
          return false;
      }
      // The certified basis must generate the whole sum-zero sublattice.
      PgstVerdict fresh = decide_pgst_general(support);
      if (fresh.answer != Answer::yes) return false;
      return hnf_canonical(cert.basis) ==
             hnf_canonical(fresh.sum_zero_basis->basis);
    }
    case Method::s_sets:
    case Method::r_sets: {
      auto fact = factor_path_order(support.m());
      if (!fact) return false;
      ObstructionSets os = build_obstruction_sets(support.m(), fact->p);
      const auto& sets =
          verdict.method == Method::s_sets ? os.s_sets : os.r_sets;
      if (sets.empty() && verdict.method == Method::s_sets) return false;
      auto witnessed = [&](const ObstructionSets::IndexSet& set) {
        for (const auto& w : verdict.witnesses) {
          if (w.c != set.c) continue;
          if (support.contains(w.missing_index)) return false;
          if (std::find(set.indices.begin(), set.indices.end(),
                        w.missing_index) == set.indices.end())
            return false;
          return true;
        }
        return false;
      };
      for (const auto& set : sets) {
        bool needs_witness;
        if (verdict.method == Method::r_sets)
          needs_witness = true;
        else if (verdict.broken_class == "all")
          needs_witness = true;
        else
          needs_witness = s_set_even_class(set, support.m()) ==
                          (verdict.broken_class == "even");
        if (needs_witness && !witnessed(set)) return false;
      }
      return true;
    }
    case Method::corollary:
      return false;
  }
  return false;
}

std::vector<FamilyInstance> corollary_family(long p, int t) {
  if (!is_odd_prime(p) || t < 2)
    throw refusal_error("invalid_family_params",
                        "the two-vertex family needs an odd prime p and t >= 2");
  const long n = (1L << t) * p - 1;
  const long modulus = 1L << t;
  std::vector<FamilyInstance> out;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      for (int alpha : {1, -1})
        if ((a + static_cast<long>(alpha) * b) % modulus == 0)
          out.push_back(FamilyInstance{a, b, alpha});
  return out;
}

PureState family_state(long p, int t, const FamilyInstance& instance) {
  const long n = (1L << t) * p - 1;
  const unsigned long N = 2UL * static_cast<unsigned long>(n + 1);
  std::vector<CycloElement> amps(n, CycloElement::zero(N));
  amps[instance.a - 1] = CycloElement::one(N);
  amps[instance.b - 1] = CycloElement::from_rational(N, instance.alpha);
  return PureState::from_exact(static_cast<int>(n), std::move(amps));
}

CrossValidationReport cross_validate(const PureState& v) {
  SupportSet support = exact_support_for_decider(v);
  CrossValidationReport report;
  PgstVerdict general = decide_pgst_general(support);
  report.verdicts.emplace_back(general.method, general.answer);
  auto fact = factor_path_order(v.m());
  if (fact && is_parity_state(v)) {
    PgstVerdict special = fact->t >= 1 ? decide_pgst_parity_s(support)
                                       : decide_pgst_parity_r(support);
    report.verdicts.emplace_back(special.method, special.answer);
  }
  for (const auto& [method, answer] : report.verdicts)
    if (answer != report.verdicts.front().second) report.agree = false;
  return report;
}

}  // namespace pgst
