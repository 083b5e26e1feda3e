#include "latpol/enumerate.hpp"

namespace latpol {

namespace {

Rat round_nearest(const Rat& x) {
  // floor(x + 1/2)
  Rat y = x + rat(1, 2);
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), y.get_num().get_mpz_t(), y.get_den().get_mpz_t());
  return Rat(q);
}

// Exact rational LLL working on the Gram matrix alone (Cohen, Alg. 2.6.3).
// Maintains the GSO data mu/B incrementally; returns the unimodular
// transform applied to the basis rows.
struct GramLll {
  int n;
  RatMat w;    // working Gram
  IntMat t;    // transform
  std::vector<RatVec> mu;
  RatVec B;

  explicit GramLll(const RatMat& gram)
      : n(gram.rows()), w(gram), t(IntMat::identity(gram.rows())),
        mu(gram.rows(), RatVec(gram.rows(), Rat(0))), B(gram.rows(), Rat(0)) {}

  void gso_row(int i) {
    for (int j = 0; j < i; ++j) {
      Rat s = w.at(i, j);
      for (int l = 0; l < j; ++l) s -= mu[i][l] * mu[j][l] * B[l];
      mu[i][j] = s / B[j];
    }
    Rat s = w.at(i, i);
    for (int j = 0; j < i; ++j) s -= mu[i][j] * mu[i][j] * B[j];
    B[i] = s;
    if (B[i] <= 0) throw Error("lll: Gram is not positive definite");
  }

  void size_reduce(int k, int l) {
    if (2 * abs(mu[k][l]) <= 1) return;
    Rat q = round_nearest(mu[k][l]);
    Int qi = q.get_num();
    t.add_multiple(k, l, -qi);
    for (int j = 0; j < n; ++j) w.at(k, j) -= q * w.at(l, j);
    for (int j = 0; j < n; ++j) w.at(j, k) -= q * w.at(j, l);
    for (int j = 0; j < l; ++j) mu[k][j] -= q * mu[l][j];
    mu[k][l] -= q;
  }

  void swap_step(int k) {
    t.swap_rows(k, k - 1);
    w.swap_rows(k, k - 1);
    for (int j = 0; j < n; ++j) std::swap(w.at(j, k), w.at(j, k - 1));
    Rat m = mu[k][k - 1];
    Rat Bp = B[k] + m * m * B[k - 1];
    mu[k][k - 1] = m * B[k - 1] / Bp;
    Rat b = B[k - 1] * B[k] / Bp;
    B[k] = b;
    B[k - 1] = Bp;
    for (int j = 0; j < k - 1; ++j) std::swap(mu[k][j], mu[k - 1][j]);
    for (int i = k + 1; i < n; ++i) {
      Rat tt = mu[i][k];
      mu[i][k] = mu[i][k - 1] - m * tt;
      mu[i][k - 1] = tt + mu[k][k - 1] * mu[i][k];
    }
  }

  void run(const Rat& delta) {
    if (n == 0) return;
    for (int i = 0; i < n; ++i) gso_row(i);
    int k = 1;
    while (k < n) {
      size_reduce(k, k - 1);
      if (B[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
        swap_step(k);
        k = std::max(k - 1, 1);
      } else {
        for (int l = k - 2; l >= 0; --l) size_reduce(k, l);
        ++k;
      }
    }
  }
};

}  // namespace

Lattice lll(const Lattice& l, const Rat& delta) {
  if (!(4 * delta > 1 && delta < 1)) throw Error("lll: delta must be in (1/4, 1)");
  GramLll engine(gram(l));
  engine.run(delta);
  RatMat reduced = to_rational(engine.t) * l.basis();
  Lattice out(l.ambient_gram(), std::move(reduced), l.label());
  Int dt = det(engine.t);
  if (dt != 1 && dt != -1) throw Error("lll: transform lost unimodularity");
  return out;
}

}  // namespace latpol
