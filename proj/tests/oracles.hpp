#pragma once

// Test-only oracles. Each one recomputes a quantity by a route independent
// of the implementation it is used to check, and stays deliberately naive.

#include <vector>

#include "latpol/lattice.hpp"
#include "latpol/prng.hpp"

namespace latpol::oracle {

// |det| as the diagonal product of the row HNF; used to cross-check the
// Bareiss determinant (and vice versa for hnf itself).
inline Int abs_det_via_hnf(const IntMat& m) {
  HnfResult r = hnf(m);
  if (r.rank < m.rows()) return 0;
  Int p = 1;
  for (int i = 0; i < m.rows(); ++i) p *= r.h.at(i, i);
  return p;
}

// Naive GF(2) rank on a byte matrix; independent of the bit-packed code.
inline int f2_rank_naive(const std::vector<std::vector<int>>& rows) {
  auto a = rows;
  int nr = int(a.size());
  if (nr == 0) return 0;
  int nc = int(a[0].size());
  int rank = 0;
  for (int col = 0; col < nc && rank < nr; ++col) {
    int piv = -1;
    for (int i = rank; i < nr; ++i)
      if (a[i][col] & 1) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(a[rank], a[piv]);
    for (int i = 0; i < nr; ++i) {
      if (i == rank || !(a[i][col] & 1)) continue;
      for (int j = 0; j < nc; ++j) a[i][j] ^= a[rank][j];
    }
    ++rank;
  }
  return rank;
}

// All nonzero lattice vectors of norm <= bound by scanning an explicit
// coordinate box. The box limits come from the exact inverse Gram, so no
// vector can escape. Only usable at small rank.
inline std::vector<RatVec> box_enumerate(const Lattice& l, const Rat& bound) {
  RatMat q = gram(l);
  RatMat qi = inverse(q);
  int n = l.rank();
  std::vector<long> lim(n);
  for (int i = 0; i < n; ++i) {
    // x_i^2 <= bound * (q^{-1})_{ii}
    Rat b = bound * qi.at(i, i);
    long k = 0;
    while (Rat((k + 1) * (k + 1)) <= b) ++k;
    lim[i] = k;
  }
  std::vector<RatVec> found;
  std::vector<long> x(n, 0);
  for (int i = 0; i < n; ++i) x[i] = -lim[i];
  while (true) {
    bool zero = true;
    for (int i = 0; i < n; ++i)
      if (x[i] != 0) { zero = false; break; }
    if (!zero) {
      RatVec coords(n);
      for (int i = 0; i < n; ++i) coords[i] = Rat(x[i]);
      Rat nn = norm_under(q, coords);
      if (nn <= bound) {
        RatVec v(l.ambient_dim(), Rat(0));
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < l.ambient_dim(); ++j) v[j] += coords[i] * l.basis().at(i, j);
        found.push_back(v);
      }
    }
    int i = 0;
    while (i < n && x[i] == lim[i]) x[i++] = -lim[i];
    if (i == n) break;
    ++x[i];
  }
  return found;
}

// Intersection through duality: L1 cap L2 = (L1* + L2*)*. Needs full rank.
inline Lattice intersect_via_dual(const Lattice& a, const Lattice& b) {
  return dual(sum(dual(a), dual(b)));
}

// Coset version of the box scan: all v in t + l with norm <= bound. The box
// is centered at t's coordinates; the per-point norm runs in plain integer
// arithmetic on the denominator-cleared form, so a few million points cost
// milliseconds. Inputs must be small enough for int64 (true for every test
// lattice here).
inline std::vector<RatVec> box_enumerate_coset(const Lattice& l, const RatVec& t,
                                               const Rat& bound) {
  RatMat q = gram(l);
  RatMat qi = inverse(q);
  int n = l.rank();
  auto tc = span_coordinates(l, t);
  if (!tc) throw Error("box_enumerate_coset: target outside the span");
  // clear denominators: y_i = x_i * e + c_i over e, Q over dq
  Int e_mpz = 1;
  for (int i = 0; i < n; ++i) {
    Int d = (*tc)[i].get_den();
    mpz_lcm(e_mpz.get_mpz_t(), e_mpz.get_mpz_t(), d.get_mpz_t());
  }
  long e = e_mpz.get_si();
  Int dq_mpz = denominator_lcm(q);
  IntMat qint = scaled_to_int(q, dq_mpz);
  long dq = dq_mpz.get_si();
  std::vector<long> qn(size_t(n) * n), cn(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) qn[size_t(i) * n + j] = qint.at(i, j).get_si();
    cn[i] = long(Rat((*tc)[i] * e).get_num().get_si());
  }
  // bound * dq * e^2 as the integer threshold
  Rat thr_rat = bound * Rat(dq) * Rat(e) * Rat(e);
  if (!is_integer(thr_rat)) {
    // round down; strictness is restored by the exact filter below
    Int f;
    mpz_fdiv_q(f.get_mpz_t(), thr_rat.get_num().get_mpz_t(), thr_rat.get_den().get_mpz_t());
    thr_rat = Rat(f);
  }
  long long threshold = thr_rat.get_num().get_si();

  std::vector<long> lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    Rat b = bound * qi.at(i, i);
    long k = 0;
    while (Rat((k + 1) * (k + 1)) <= b) ++k;
    double c = (*tc)[i].get_d();
    lo[i] = long(std::floor(-c)) - k - 1;
    hi[i] = long(std::ceil(-c)) + k + 1;
  }
  std::vector<RatVec> found;
  std::vector<long> x(lo), y(n);
  while (true) {
    long long acc = 0;
    for (int i = 0; i < n; ++i) y[i] = x[i] * e + cn[i];
    for (int i = 0; i < n; ++i) {
      if (!y[i]) continue;
      long long row = 0;
      for (int j = 0; j < n; ++j) row += qn[size_t(i) * n + j] * y[j];
      acc += y[i] * row;
    }
    if (acc <= threshold) {
      RatVec coords(n);
      for (int i = 0; i < n; ++i) coords[i] = Rat(x[i]) + (*tc)[i];
      if (norm_under(q, coords) <= bound) {
        RatVec v(l.ambient_dim(), Rat(0));
        for (int i = 0; i < n; ++i)
          if (coords[i] != 0)
            for (int j = 0; j < l.ambient_dim(); ++j) v[j] += coords[i] * l.basis().at(i, j);
        found.push_back(v);
      }
    }
    int i = 0;
    while (i < n && x[i] == hi[i]) x[i] = lo[i], ++i;
    if (i == n) break;
    ++x[i];
  }
  return found;
}

// Random unimodular integer matrix as a product of elementary row
// operations; entries stay small for few steps.
inline IntMat random_unimodular(int n, Prng& rng, int steps = 12) {
  IntMat m = IntMat::identity(n);
  for (int s = 0; s < steps; ++s) {
    int i = int(rng.below(n)), j = int(rng.below(n));
    if (i == j) continue;
    long c = long(rng.below(5)) - 2;
    if (c == 0) c = 1;
    m.add_multiple(i, j, Int(c));
  }
  return m;
}

inline IntMat random_int_matrix(int r, int c, long lo, long hi, Prng& rng) {
  IntMat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = Int(long(rng.below(hi - lo + 1)) + lo);
  return m;
}

}  // namespace latpol::oracle
