#pragma once

#include <gmpxx.h>

#include <vector>

namespace pgst {

using ZVec = std::vector<mpz_class>;
using ZMat = std::vector<ZVec>;
using QVec = std::vector<mpq_class>;

// Product of two integer matrices; throws std::invalid_argument on shape
// mismatch.
ZMat zmat_mul(const ZMat& a, const ZMat& b);

// Basis (as rows) of the left kernel {u : u * w = 0} of an integer matrix.
// The result is in canonical Hermite normal form, so it is unique for a
// given input matrix.
ZMat left_kernel_basis(const ZMat& w);

// Rank of the row space.
int row_rank(ZMat rows);

// Canonical Hermite normal form of the row lattice: pivot entries positive,
// entries above each pivot reduced into [0, pivot), zero rows dropped.
// Two row sets generate the same lattice iff their forms are equal.
ZMat hnf_canonical(ZMat rows);

// Membership of v in the row lattice described by hnf_canonical output.
bool lattice_contains(const ZMat& hnf, const ZVec& v);

// Exact Lovasz-reduced basis (delta = 3/4). Rows must be linearly
// independent.
ZMat lll_reduce(ZMat basis);

// Babai nearest-plane on an LLL-reduced basis: a lattice point close to
// target. Coordinates of target and basis rows must have equal length.
ZVec nearest_plane(const ZMat& basis, const QVec& target);

}  // namespace pgst
