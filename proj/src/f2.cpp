#include "latpol/f2.hpp"

namespace latpol {

F2Decomp f2_decompose(const F2Mat& m) {
  int nr = m.rows(), nc = m.cols();
  // Augment with an identity to track the transform; nullspace rows are the
  // transform rows of zero result rows.
  F2Mat work = m;
  F2Mat trans = F2Mat::identity(nr);

  int row = 0;
  std::vector<int> pivot_cols;
  for (int col = 0; col < nc && row < nr; ++col) {
    int piv = -1;
    for (int i = row; i < nr; ++i)
      if (work.get(i, col)) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(work.row(row), work.row(piv));
    std::swap(trans.row(row), trans.row(piv));
    for (int i = 0; i < nr; ++i) {
      if (i == row || !work.get(i, col)) continue;
      work.row(i).xor_with(work.row(row));
      trans.row(i).xor_with(trans.row(row));
    }
    pivot_cols.push_back(col);
    ++row;
  }

  F2Decomp d;
  d.rank = row;
  d.rowspace = F2Mat(row, nc);
  for (int i = 0; i < row; ++i) d.rowspace.row(i) = work.row(i);
  d.nullspace = F2Mat(nr - row, nr);
  for (int i = row; i < nr; ++i) d.nullspace.row(i - row) = trans.row(i);
  return d;
}

int f2_rank(const F2Mat& m) { return f2_decompose(m).rank; }

std::optional<F2Vec> f2_solve_left(const F2Mat& a, const F2Vec& b) {
  // Solve x * a = b by eliminating on a with the transform tracked.
  int nr = a.rows(), nc = a.cols();
  F2Mat work = a;
  F2Mat trans = F2Mat::identity(nr);
  F2Vec rhs = b;
  F2Vec x(nr);

  int row = 0;
  for (int col = 0; col < nc && row < nr; ++col) {
    int piv = -1;
    for (int i = row; i < nr; ++i)
      if (work.get(i, col)) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(work.row(row), work.row(piv));
    std::swap(trans.row(row), trans.row(piv));
    for (int i = 0; i < nr; ++i) {
      if (i == row || !work.get(i, col)) continue;
      work.row(i).xor_with(work.row(row));
      trans.row(i).xor_with(trans.row(row));
    }
    ++row;
  }
  // work rows 0..row-1 are an echelon basis; express rhs in them
  for (int i = 0; i < row; ++i) {
    int lead = -1;
    for (int j = 0; j < nc; ++j)
      if (work.get(i, j)) { lead = j; break; }
    if (lead >= 0 && rhs.get(lead)) {
      rhs.xor_with(work.row(i));
      x.xor_with(trans.row(i));
    }
  }
  if (!rhs.is_zero()) return std::nullopt;
  return x;
}

F2Mat f2_row_space(const F2Mat& m) { return f2_decompose(m).rowspace; }

int f2_intersection_dim(const F2Mat& a, const F2Mat& b) {
  int ra = f2_rank(a), rb = f2_rank(b);
  int rsum = f2_rank(a.vstack(b));
  return ra + rb - rsum;
}

IntMat f2_to_int(const F2Mat& m) {
  IntMat r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r.at(i, j) = m.get(i, j) ? 1 : 0;
  return r;
}

F2Mat int_to_f2(const IntMat& m) {
  F2Mat r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      r.set(i, j, mpz_odd_p(m.at(i, j).get_mpz_t()));
  return r;
}

}  // namespace latpol
