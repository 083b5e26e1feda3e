#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "latpol/matrix.hpp"

namespace latpol {

// Bit-packed row vector over GF(2).
class F2Vec {
public:
  F2Vec() : len_(0) {}
  explicit F2Vec(int len) : len_(len), w_((len + 63) / 64, 0) {}

  int size() const { return len_; }
  bool get(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(int i, bool v) {
    uint64_t mask = uint64_t(1) << (i & 63);
    if (v)
      w_[i >> 6] |= mask;
    else
      w_[i >> 6] &= ~mask;
  }
  void xor_with(const F2Vec& o) {
    for (size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
  }
  bool is_zero() const {
    for (uint64_t w : w_)
      if (w) return false;
    return true;
  }
  bool operator==(const F2Vec& o) const { return len_ == o.len_ && w_ == o.w_; }
  bool operator!=(const F2Vec& o) const { return !(*this == o); }

  // parity of the AND of two vectors; the standard dot product over GF(2)
  static bool dot(const F2Vec& a, const F2Vec& b) {
    uint64_t acc = 0;
    for (size_t k = 0; k < a.w_.size(); ++k) acc ^= a.w_[k] & b.w_[k];
    return __builtin_parityll(acc);
  }

private:
  int len_;
  std::vector<uint64_t> w_;
};

class F2Mat {
public:
  F2Mat() : cols_(0) {}
  F2Mat(int rows, int cols) : cols_(cols), rows_(rows, F2Vec(cols)) {}

  static F2Mat identity(int n) {
    F2Mat m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, true);
    return m;
  }

  int rows() const { return int(rows_.size()); }
  int cols() const { return cols_; }
  bool get(int i, int j) const { return rows_[i].get(j); }
  void set(int i, int j, bool v) { rows_[i].set(j, v); }
  const F2Vec& row(int i) const { return rows_[i]; }
  F2Vec& row(int i) { return rows_[i]; }
  void append_row(const F2Vec& r) { rows_.push_back(r); }

  F2Mat transpose() const {
    F2Mat t(cols_, rows());
    for (int i = 0; i < rows(); ++i)
      for (int j = 0; j < cols_; ++j)
        if (get(i, j)) t.set(j, i, true);
    return t;
  }

  F2Mat operator*(const F2Mat& o) const {
    if (cols_ != o.rows()) throw Error("F2 product shape mismatch");
    F2Mat p(rows(), o.cols());
    for (int i = 0; i < rows(); ++i)
      for (int k = 0; k < cols_; ++k)
        if (get(i, k)) p.rows_[i].xor_with(o.rows_[k]);
    return p;
  }

  F2Mat operator+(const F2Mat& o) const {
    if (rows() != o.rows() || cols_ != o.cols_) throw Error("F2 sum shape mismatch");
    F2Mat s = *this;
    for (int i = 0; i < rows(); ++i) s.rows_[i].xor_with(o.rows_[i]);
    return s;
  }

  bool operator==(const F2Mat& o) const { return cols_ == o.cols_ && rows_ == o.rows_; }

  F2Vec apply(const F2Vec& v) const {  // v * this, row-vector convention
    F2Vec r(cols_);
    for (int i = 0; i < rows(); ++i)
      if (v.get(i)) r.xor_with(rows_[i]);
    return r;
  }

  F2Mat vstack(const F2Mat& below) const {
    if (rows() == 0) return below;
    if (below.rows() == 0) return *this;
    if (cols_ != below.cols_) throw Error("F2 vstack width mismatch");
    F2Mat s = *this;
    for (int i = 0; i < below.rows(); ++i) s.append_row(below.row(i));
    return s;
  }

private:
  int cols_;
  std::vector<F2Vec> rows_;
};

struct F2Decomp {
  int rank = 0;
  F2Mat nullspace;  // rows span { v : v * m = 0 }
  F2Mat rowspace;   // reduced row-echelon basis of the row space
};

// Rank, nullspace and row space of m in one pass of Gaussian elimination.
F2Decomp f2_decompose(const F2Mat& m);

int f2_rank(const F2Mat& m);

// One solution x of x * a = b, if any.
std::optional<F2Vec> f2_solve_left(const F2Mat& a, const F2Vec& b);

// Canonical (RREF) basis of a row space; rows of the result are the basis.
F2Mat f2_row_space(const F2Mat& m);

// dim of the intersection of two row spaces
int f2_intersection_dim(const F2Mat& a, const F2Mat& b);

IntMat f2_to_int(const F2Mat& m);
F2Mat int_to_f2(const IntMat& m);

}  // namespace latpol
