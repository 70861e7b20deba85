#include "pgst/lattice.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>

namespace pgst {

namespace {

void row_submul(ZVec& dst, const ZVec& src, const mpz_class& q) {
  if (q == 0) return;
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] -= q * src[i];
}

void row_negate(ZVec& row) {
  for (auto& x : row) x = -x;
}

// Integer row echelon form via Euclidean elimination. Row swaps and
// combinations are mirrored on *track when it is non-null. Pivots end up
// positive; when reduce_above is set, entries above each pivot are reduced
// into [0, pivot). Returns the rank.
std::size_t echelonize(ZMat& a, ZMat* track, bool reduce_above) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    for (;;) {
      std::size_t piv = rows;
      for (std::size_t i = rank; i < rows; ++i) {
        if (a[i][col] == 0) continue;
        if (piv == rows ||
            mpz_cmpabs(a[i][col].get_mpz_t(), a[piv][col].get_mpz_t()) < 0) {
          piv = i;
        }
      }
      if (piv == rows) break;
      std::swap(a[rank], a[piv]);
      if (track) std::swap((*track)[rank], (*track)[piv]);
      if (a[rank][col] < 0) {
        row_negate(a[rank]);
        if (track) row_negate((*track)[rank]);
      }
      bool cleared = true;
      for (std::size_t i = rank + 1; i < rows; ++i) {
        if (a[i][col] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][col].get_mpz_t(),
                   a[rank][col].get_mpz_t());
        row_submul(a[i], a[rank], q);
        if (track) row_submul((*track)[i], (*track)[rank], q);
        if (a[i][col] != 0) cleared = false;
      }
      if (cleared) {
        pivot_col.push_back(col);
        ++rank;
        break;
      }
    }
  }
  if (reduce_above) {
    for (std::size_t r = 0; r < rank; ++r) {
      const std::size_t col = pivot_col[r];
      for (std::size_t i = 0; i < r; ++i) {
        if (a[i][col] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][col].get_mpz_t(), a[r][col].get_mpz_t());
        row_submul(a[i], a[r], q);
        if (track) row_submul((*track)[i], (*track)[r], q);
      }
    }
  }
  return rank;
}

mpz_class round_nearest(const mpq_class& x) {
  // floor(x + 1/2)
  mpz_class num = 2 * x.get_num() + x.get_den();
  mpz_class den = 2 * x.get_den();
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

}  // namespace

ZMat zmat_mul(const ZMat& a, const ZMat& b) {
  if (a.empty()) return {};
  if (b.empty() || a[0].size() != b.size())
    throw std::invalid_argument("zmat_mul: shape mismatch");
  const std::size_t cols = b[0].size();
  ZMat out(a.size(), ZVec(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

ZMat left_kernel_basis(const ZMat& w) {
  const std::size_t rows = w.size();
  ZMat a = w;
  ZMat u(rows, ZVec(rows, 0));
  for (std::size_t i = 0; i < rows; ++i) u[i][i] = 1;
  const std::size_t rank = echelonize(a, &u, false);
  ZMat kernel(u.begin() + static_cast<std::ptrdiff_t>(rank), u.end());
  return hnf_canonical(std::move(kernel));
}

int row_rank(ZMat rows) {
  return static_cast<int>(echelonize(rows, nullptr, false));
}

ZMat hnf_canonical(ZMat rows) {
  const std::size_t rank = echelonize(rows, nullptr, true);
  rows.resize(rank);
  return rows;
}

bool lattice_contains(const ZMat& hnf, const ZVec& v) {
  ZVec r = v;
  for (const auto& row : hnf) {
    std::size_t p = 0;
    while (p < row.size() && row[p] == 0) ++p;
    if (p == row.size()) continue;
    if (r[p] == 0) continue;
    if (!mpz_divisible_p(r[p].get_mpz_t(), row[p].get_mpz_t())) return false;
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), r[p].get_mpz_t(), row[p].get_mpz_t());
    row_submul(r, row, q);
  }
  for (const auto& x : r)
    if (x != 0) return false;
  return true;
}

namespace {

mpq_class dot_zz(const ZVec& a, const ZVec& b) {
  mpz_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return mpq_class(s);
}

// Gram-Schmidt coefficients mu and squared norms bnorm of the orthogonalized
// rows, kept as exact rationals. The orthogonal vectors themselves are not
// stored; everything LLL needs is recoverable from pairwise dot products.
struct Gso {
  std::vector<QVec> mu;
  QVec bnorm;
};

Gso compute_gso(const ZMat& b) {
  const std::size_t k = b.size();
  Gso g;
  g.mu.assign(k, QVec(k, 0));
  g.bnorm.assign(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    mpq_class norm = dot_zz(b[i], b[i]);
    for (std::size_t j = 0; j < i; ++j) {
      mpq_class m = dot_zz(b[i], b[j]);
      for (std::size_t l = 0; l < j; ++l)
        m -= g.mu[j][l] * g.mu[i][l] * g.bnorm[l];
      m /= g.bnorm[j];
      m.canonicalize();
      g.mu[i][j] = m;
      norm -= m * m * g.bnorm[j];
    }
    norm.canonicalize();
    g.bnorm[i] = norm;
  }
  return g;
}

}  // namespace

ZMat lll_reduce(ZMat basis) {
  const std::size_t k = basis.size();
  if (k <= 1) return basis;
  Gso g = compute_gso(basis);
  for (std::size_t i = 0; i < k; ++i)
    if (g.bnorm[i] == 0)
      throw std::invalid_argument("lll_reduce: dependent rows");

  const mpq_class delta(3, 4);
  auto size_reduce = [&](std::size_t i, std::size_t j) {
    mpz_class q = round_nearest(g.mu[i][j]);
    if (q == 0) return;
    row_submul(basis[i], basis[j], q);
    g.mu[i][j] -= mpq_class(q);
    for (std::size_t l = 0; l < j; ++l) g.mu[i][l] -= mpq_class(q) * g.mu[j][l];
  };

  std::size_t cur = 1;
  while (cur < k) {
    size_reduce(cur, cur - 1);
    mpq_class lhs = g.bnorm[cur];
    mpq_class rhs = (delta - g.mu[cur][cur - 1] * g.mu[cur][cur - 1]) *
                    g.bnorm[cur - 1];
    if (lhs >= rhs) {
      for (std::size_t j = cur - 1; j-- > 0;) size_reduce(cur, j);
      ++cur;
      continue;
    }
    std::swap(basis[cur], basis[cur - 1]);
    // Exchange step updates for mu and the orthogonal norms.
    mpq_class mu_old = g.mu[cur][cur - 1];
    mpq_class bsum = g.bnorm[cur] + mu_old * mu_old * g.bnorm[cur - 1];
    g.mu[cur][cur - 1] = mu_old * g.bnorm[cur - 1] / bsum;
    g.bnorm[cur] = g.bnorm[cur - 1] * g.bnorm[cur] / bsum;
    g.bnorm[cur - 1] = bsum;
    for (std::size_t j = 0; j + 1 < cur; ++j)
      std::swap(g.mu[cur][j], g.mu[cur - 1][j]);
    for (std::size_t i = cur + 1; i < k; ++i) {
      mpq_class t = g.mu[i][cur];
      g.mu[i][cur] = g.mu[i][cur - 1] - mu_old * t;
      g.mu[i][cur - 1] = t + g.mu[cur][cur - 1] * g.mu[i][cur];
    }
    cur = cur > 1 ? cur - 1 : 1;
  }
  return basis;
}

ZVec nearest_plane(const ZMat& basis, const QVec& target) {
  const std::size_t k = basis.size();
  if (k == 0) return ZVec(target.size(), 0);
  const std::size_t n = basis[0].size();
  if (target.size() != n)
    throw std::invalid_argument("nearest_plane: dimension mismatch");

  // Orthogonalized rows are needed explicitly to project the residual.
  std::vector<QVec> bstar(k, QVec(n, 0));
  QVec bnorm(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t c = 0; c < n; ++c) bstar[i][c] = mpq_class(basis[i][c]);
    for (std::size_t j = 0; j < i; ++j) {
      if (bnorm[j] == 0) throw std::invalid_argument("nearest_plane: dependent rows");
      mpq_class m = 0;
      for (std::size_t c = 0; c < n; ++c)
        m += mpq_class(basis[i][c]) * bstar[j][c];
      m /= bnorm[j];
      for (std::size_t c = 0; c < n; ++c) bstar[i][c] -= m * bstar[j][c];
    }
    mpq_class norm = 0;
    for (std::size_t c = 0; c < n; ++c) norm += bstar[i][c] * bstar[i][c];
    norm.canonicalize();
    bnorm[i] = norm;
  }
  if (bnorm[k - 1] == 0)
    throw std::invalid_argument("nearest_plane: dependent rows");

  QVec resid = target;
  ZVec point(n, 0);
  for (std::size_t i = k; i-- > 0;) {
    mpq_class m = 0;
    for (std::size_t c = 0; c < n; ++c) m += resid[c] * bstar[i][c];
    m /= bnorm[i];
    m.canonicalize();
    mpz_class z = round_nearest(m);
    if (z == 0) continue;
    for (std::size_t c = 0; c < n; ++c) {
      mpq_class step = mpq_class(z * basis[i][c]);
      resid[c] -= step;
      point[c] += z * basis[i][c];
    }
  }
  return point;
}

}  // namespace pgst
