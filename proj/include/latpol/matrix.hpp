#pragma once

#include <initializer_list>
#include <vector>

#include "latpol/rational.hpp"

namespace latpol {

// Dense row-major matrix over an exact scalar. Matrices are immutable
// values in spirit: every operation returns a fresh matrix, so values can
// be shared freely across workers.
template <class T>
class Matrix {
public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {
    if (rows < 0 || cols < 0) throw Error("negative matrix dimension");
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    if (rows.empty()) return Matrix();
    Matrix m(int(rows.size()), int(rows[0].size()));
    for (int i = 0; i < m.rows_; ++i) {
      if (int(rows[i].size()) != m.cols_) throw Error("ragged rows");
      for (int j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const T& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  std::vector<T> row(int i) const {
    return std::vector<T>(a_.begin() + size_t(i) * cols_, a_.begin() + size_t(i + 1) * cols_);
  }

  void set_row(int i, const std::vector<T>& r) {
    for (int j = 0; j < cols_; ++j) at(i, j) = r[j];
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw Error("matrix product shape mismatch");
    Matrix p(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const T& aik = at(i, k);
        if (aik == 0) continue;
        for (int j = 0; j < o.cols_; ++j) p.at(i, j) += aik * o.at(k, j);
      }
    return p;
  }

  Matrix operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix sum shape mismatch");
    Matrix s(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) s.a_[i] = a_[i] + o.a_[i];
    return s;
  }

  Matrix operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix diff shape mismatch");
    Matrix s(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) s.a_[i] = a_[i] - o.a_[i];
    return s;
  }

  Matrix scaled(const T& c) const {
    Matrix s(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) s.a_[i] = a_[i] * c;
    return s;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = i + 1; j < cols_; ++j)
        if (at(i, j) != at(j, i)) return false;
    return true;
  }

  bool is_zero() const {
    for (const T& v : a_)
      if (v != 0) return false;
    return true;
  }

  // in-place helpers used by the elimination kernels
  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
  }
  void negate_row(int i) {
    for (int k = 0; k < cols_; ++k) at(i, k) = -at(i, k);
  }
  // row i += c * row j
  void add_multiple(int i, int j, const T& c) {
    if (c == 0) return;
    for (int k = 0; k < cols_; ++k) at(i, k) += c * at(j, k);
  }

  Matrix vstack(const Matrix& below) const {
    if (empty()) return below;
    if (below.empty()) return *this;
    if (cols_ != below.cols_) throw Error("vstack width mismatch");
    Matrix s(rows_ + below.rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) s.at(i, j) = at(i, j);
    for (int i = 0; i < below.rows_; ++i)
      for (int j = 0; j < cols_; ++j) s.at(rows_ + i, j) = below.at(i, j);
    return s;
  }

  Matrix top_rows(int n) const {
    Matrix s(n, cols_);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < cols_; ++j) s.at(i, j) = at(i, j);
    return s;
  }

private:
  int rows_, cols_;
  std::vector<T> a_;
};

using IntMat = Matrix<Int>;
using RatMat = Matrix<Rat>;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

inline RatMat to_rational(const IntMat& m) {
  RatMat r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r.at(i, j) = Rat(m.at(i, j));
  return r;
}

inline RatVec to_rational(const IntVec& v) {
  RatVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

// Least common multiple of all denominators; 1 for an integer matrix.
inline Int denominator_lcm(const RatMat& m) {
  Int l = 1;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      Int d = m.at(i, j).get_den();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
  return l;
}

// m must equal an integer matrix after scaling by `scale`.
inline IntMat scaled_to_int(const RatMat& m, const Int& scale) {
  IntMat r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      Rat v = m.at(i, j) * Rat(scale);
      if (!is_integer(v)) throw Error("scaled_to_int: scale does not clear denominators");
      r.at(i, j) = v.get_num();
    }
  return r;
}

inline RatVec operator*(const RatVec& v, const RatMat& m) {
  if (int(v.size()) != m.rows()) throw Error("vector*matrix shape mismatch");
  RatVec r(m.cols(), Rat(0));
  for (int i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    for (int j = 0; j < m.cols(); ++j) r[j] += v[i] * m.at(i, j);
  }
  return r;
}

inline Rat dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw Error("dot: length mismatch");
  Rat s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline RatVec sub(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw Error("sub: length mismatch");
  RatVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline RatVec add(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw Error("add: length mismatch");
  RatVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline RatVec negated(const RatVec& a) {
  RatVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline RatVec scaled(const RatVec& a, const Rat& c) {
  RatVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
  return r;
}

// norm of v under symmetric form g: v g v^T
inline Rat norm_under(const RatMat& g, const RatVec& v) {
  Rat s(0);
  for (int i = 0; i < g.rows(); ++i) {
    if (v[i] == 0) continue;
    Rat row(0);
    for (int j = 0; j < g.cols(); ++j)
      if (v[j] != 0) row += g.at(i, j) * v[j];
    s += v[i] * row;
  }
  return s;
}

inline Rat inner_under(const RatMat& g, const RatVec& a, const RatVec& b) {
  Rat s(0);
  for (int i = 0; i < g.rows(); ++i) {
    if (a[i] == 0) continue;
    Rat row(0);
    for (int j = 0; j < g.cols(); ++j)
      if (b[j] != 0) row += g.at(i, j) * b[j];
    s += a[i] * row;
  }
  return s;
}

}  // namespace latpol
