#include "latpol/linalg.hpp"

#include <cstdlib>

namespace latpol {

namespace {

// Pick the row at or below `from` with the smallest nonzero |entry| in
// column `col`; keeps coefficient growth down during the gcd sweep.
int pivot_row(const IntMat& m, int from, int col) {
  int best = -1;
  for (int i = from; i < m.rows(); ++i) {
    if (m.at(i, col) == 0) continue;
    if (best < 0 || mpz_cmpabs(m.at(i, col).get_mpz_t(), m.at(best, col).get_mpz_t()) < 0) best = i;
  }
  return best;
}

}  // namespace

HnfResult hnf(const IntMat& m) {
  HnfResult r;
  r.h = m;
  r.u = IntMat::identity(m.rows());
  IntMat& h = r.h;
  IntMat& u = r.u;

  int row = 0;
  for (int col = 0; col < h.cols() && row < h.rows(); ++col) {
    int piv = pivot_row(h, row, col);
    if (piv < 0) continue;
    h.swap_rows(row, piv);
    u.swap_rows(row, piv);

    // Euclidean sweep: clear the column below the pivot.
    while (true) {
      piv = pivot_row(h, row + 1, col);
      if (piv < 0) break;
      if (mpz_cmpabs(h.at(piv, col).get_mpz_t(), h.at(row, col).get_mpz_t()) < 0) {
        h.swap_rows(row, piv);
        u.swap_rows(row, piv);
      }
      for (int i = row + 1; i < h.rows(); ++i) {
        if (h.at(i, col) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), h.at(i, col).get_mpz_t(), h.at(row, col).get_mpz_t());
        if (q != 0) {
          h.add_multiple(i, row, -q);
          u.add_multiple(i, row, -q);
        }
      }
    }

    if (h.at(row, col) < 0) {
      h.negate_row(row);
      u.negate_row(row);
    }
    ++row;
  }
  r.rank = row;

  // Reduce entries above each pivot into [0, pivot). Ascending pivot order:
  // row i only touches columns at or right of its own pivot, so earlier
  // reductions stay intact.
  for (int i = 0; i < r.rank; ++i) {
    int col = 0;
    while (col < h.cols() && h.at(i, col) == 0) ++col;
    if (col == h.cols()) continue;
    for (int k = 0; k < i; ++k) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), h.at(k, col).get_mpz_t(), h.at(i, col).get_mpz_t());
      if (q != 0) {
        h.add_multiple(k, i, -q);
        u.add_multiple(k, i, -q);
      }
    }
  }
  return r;
}

IntMat left_kernel(const IntMat& m) {
  HnfResult r = hnf(m);
  int null_dim = m.rows() - r.rank;
  IntMat k(null_dim, m.rows());
  for (int i = 0; i < null_dim; ++i)
    for (int j = 0; j < m.rows(); ++j) k.at(i, j) = r.u.at(r.rank + i, j);
  return k;
}

Int det(const IntMat& m) {
  if (m.rows() != m.cols()) throw Error("det: non-square matrix");
  int n = m.rows();
  if (n == 0) return 1;
  IntMat a = m;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a.at(k, k) == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (a.at(i, k) != 0) { piv = i; break; }
      if (piv < 0) return 0;
      a.swap_rows(k, piv);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Int t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
        mpz_divexact(a.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a.at(i, k) = 0;
    }
    prev = a.at(k, k);
  }
  return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
}

Rat det(const RatMat& m) {
  if (m.rows() != m.cols()) throw Error("det: non-square matrix");
  if (m.rows() == 0) return Rat(1);
  Int l = denominator_lcm(m);
  Int d = det(scaled_to_int(m, l));
  Int scale;
  mpz_pow_ui(scale.get_mpz_t(), l.get_mpz_t(), m.rows());
  return rat(d, scale);
}

namespace {

// Gaussian elimination over Q on the augmented system; shared by solve and
// inverse.
struct Rref {
  RatMat a;            // reduced matrix
  std::vector<int> pivot_col;
  int rank = 0;
};

Rref rref(RatMat a) {
  Rref r;
  int row = 0;
  for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
    int piv = -1;
    for (int i = row; i < a.rows(); ++i)
      if (a.at(i, col) != 0) { piv = i; break; }
    if (piv < 0) continue;
    a.swap_rows(row, piv);
    Rat inv = 1 / a.at(row, col);
    for (int j = col; j < a.cols(); ++j) a.at(row, j) *= inv;
    for (int i = 0; i < a.rows(); ++i) {
      if (i == row || a.at(i, col) == 0) continue;
      Rat c = a.at(i, col);
      for (int j = col; j < a.cols(); ++j) a.at(i, j) -= c * a.at(row, j);
    }
    r.pivot_col.push_back(col);
    ++row;
  }
  r.rank = row;
  r.a = std::move(a);
  return r;
}

}  // namespace

SolveResult solve(const RatMat& a, const RatVec& b) {
  if (int(b.size()) != a.rows()) throw Error("solve: rhs length mismatch");
  RatMat aug(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  Rref r = rref(std::move(aug));
  SolveResult res;
  bool rank_deficient = false;
  // rank of the coefficient part
  int coeff_rank = 0;
  for (int c : r.pivot_col)
    if (c < a.cols()) ++coeff_rank;
  rank_deficient = coeff_rank < a.cols();
  // inconsistent iff a pivot landed in the augmented column
  bool inconsistent = coeff_rank < r.rank;
  if (inconsistent) {
    res.status = SolveStatus::inconsistent;
    return res;
  }
  if (rank_deficient) {
    res.status = SolveStatus::rank_deficient;
    return res;
  }
  res.status = SolveStatus::ok;
  res.x.assign(a.cols(), Rat(0));
  for (int i = 0; i < r.rank; ++i) res.x[r.pivot_col[i]] = r.a.at(i, a.cols());
  return res;
}

SolveResult solve_left(const RatMat& a, const RatVec& b) {
  return solve(a.transpose(), b);
}

RatMat inverse(const RatMat& m) {
  if (m.rows() != m.cols()) throw Error("inverse: non-square matrix");
  int n = m.rows();
  RatMat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = 1;
  }
  Rref r = rref(std::move(aug));
  for (int i = 0; i < n; ++i)
    if (i >= int(r.pivot_col.size()) || r.pivot_col[i] != i)
      throw Error("inverse: singular matrix");
  RatMat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = r.a.at(i, n + j);
  return inv;
}

int rank(const IntMat& m) { return hnf(m).rank; }

int rank(const RatMat& m) {
  Int l = denominator_lcm(m);
  return hnf(scaled_to_int(m, l)).rank;
}

}  // namespace latpol
