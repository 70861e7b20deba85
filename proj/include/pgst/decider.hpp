#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pgst/lattice.hpp"
#include "pgst/states.hpp"

namespace pgst {

// One integer dependence among supported eigenvalues: coeffs[i] multiplies
// theta_j for j = support.indices()[i].
struct RelationVector {
  SupportSet support;
  ZVec coeffs;

  mpz_class coeff_sum() const;
  // Sum of coefficients sitting at even eigenvalue indices.  A transfer
  // obstruction is a relation whose coefficients sum to zero while this
  // parity sum is odd.
  mpz_class even_index_sum() const;
  bool parity_sum_odd() const;
  CycloElement theta_combination() const;  // exact; zero for a true relation
  bool verify() const;
};

// Basis (rows of basis, aligned with support.indices()) of all integer
// vectors l with sum_j l_j theta_j = 0.
struct RelationLattice {
  SupportSet support;
  ZMat basis;

  int rank() const { return static_cast<int>(basis.size()); }
};

RelationLattice relation_lattice(const SupportSet& support);

enum class Answer { yes, no };
enum class Method { general_lattice, s_sets, r_sets, corollary };
std::string method_name(Method method);
std::string answer_name(Answer answer);

// m = 2^t * p^s with p an odd prime and s >= 1; nullopt when m has no such
// shape (m a power of two, or with two distinct odd prime factors).
struct PathOrderFactorization {
  int t = 0;
  long p = 0;
  int s = 0;
};
std::optional<PathOrderFactorization> factor_path_order(int m);

// Eigenvalue index families whose containment in a support obstructs
// transfer for parity states.  The S family lives on m = 2^t p^s (t >= 1):
// S_c = {c + j m/p : 0 <= j < p} for 1 <= c < m/p plus the singleton
// S_0 = {m/2}.  The R family lives on m = p^s:
// R_c = {c + j m/p} union {m/p - c + j m/p} for 1 <= c < m/(2p).
struct ObstructionSets {
  int m = 0;
  long p = 0;
  int t = 0;
  int s = 0;

  struct IndexSet {
    int c;  // 0 labels the singleton {m/2}
    std::vector<int> indices;
  };
  std::vector<IndexSet> s_sets;
  std::vector<IndexSet> r_sets;
};
ObstructionSets build_obstruction_sets(int m, long p);

// Class of an S set when pairing odd-class with even-class sets: chains
// S_c follow the parity of c; the singleton {m/2} follows the parity of the
// index m/2 itself.
bool s_set_even_class(const ObstructionSets::IndexSet& set, int m);

// A fully-contained obstruction set has no such witness; a broken one is
// certified by one missing index.
struct ObstructionWitness {
  int c;
  int missing_index;
};

struct PgstVerdict {
  Answer answer;
  Method method;
  SupportSet support;

  // general_lattice, answer yes: basis of the sum-zero relation sublattice,
  // every vector of which has even parity sum.
  std::optional<RelationLattice> sum_zero_basis;
  // answer no, any method: one relation with coefficient sum zero and odd
  // parity sum.
  std::optional<RelationVector> violating_relation;
  // s_sets / r_sets, answer yes: which class of obstruction sets is fully
  // broken ("odd", "even", or "all"), witnessed per set.
  std::string broken_class;
  std::vector<ObstructionWitness> witnesses;
};

// Decision for transfer from a state with this eigenvalue support to its
// mirror.  The general form works for any state of any path; the s/r forms
// require the stated path order shape and a mirror-closed support (which
// parity states always have) and refuse otherwise.
PgstVerdict decide_pgst_general(const SupportSet& support);
PgstVerdict decide_pgst_general(const PureState& v);
PgstVerdict decide_pgst_parity_s(const SupportSet& support);
PgstVerdict decide_pgst_parity_s(const PureState& v);
PgstVerdict decide_pgst_parity_r(const SupportSet& support);
PgstVerdict decide_pgst_parity_r(const PureState& v);

// Fastest applicable decider; re-checked against the general decider when
// n <= cross_check_limit, throwing std::logic_error on any disagreement.
PgstVerdict decide_auto(const PureState& v, int cross_check_limit = 40);

// Re-derives every claim the verdict makes (exact relation checks, lattice
// regeneration, set containments) from the support alone.
bool verify_certificate(const PgstVerdict& verdict);

// Two-vertex family on P_{2^t p - 1}: |a> + alpha |b> with 1 <= a < b <= n,
// alpha = +-1, and a + alpha b divisible by 2^t.  Every instance admits
// transfer to its mirror.
struct FamilyInstance {
  int a;
  int b;
  int alpha;
};
std::vector<FamilyInstance> corollary_family(long p, int t);
PureState family_state(long p, int t, const FamilyInstance& instance);

struct CrossValidationReport {
  std::vector<std::pair<Method, Answer>> verdicts;
  bool agree = true;
};
CrossValidationReport cross_validate(const PureState& v);

}  // namespace pgst
