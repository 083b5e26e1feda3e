#include "latpol/lmn.hpp"

namespace latpol {

namespace {

// Upsilon^k ambient: block-diagonal copies of Gram(parent)/2.
RatMat upsilon_k_gram(const Lattice& parent, int k) {
  int d = parent.ambient_dim();
  RatMat g(d * k, d * k);
  for (int b = 0; b < k; ++b)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        g.at(b * d + i, b * d + j) = parent.ambient_gram().at(i, j) / 2;
  return g;
}

RatVec embedded(const RatVec& v, int block, int k) {
  int d = int(v.size());
  RatVec out(size_t(d) * k, Rat(0));
  for (int j = 0; j < d; ++j) out[block * d + j] = v[j];
  return out;
}

struct Pieces {
  Lattice M, N, upsilon, MN;
  int d = 0;
};

Pieces pieces_of(const LmnSpec& spec) {
  Pieces p;
  p.M = half_x(spec.pair);
  p.N = half_y(spec.pair);
  p.upsilon = upsilon_scale(spec.pair.parent);
  // M cap N = 2*Upsilon by the polarization axioms; computed, then checked
  p.MN = intersect(p.M, p.N);
  Lattice two_upsilon(p.upsilon.ambient_gram(), p.upsilon.basis().scaled(Rat(2)));
  if (!equal_lattices(p.MN, two_upsilon))
    throw Error("lmn: M cap N is not 2*Upsilon; polarization invalid");
  p.d = p.upsilon.ambient_dim();
  return p;
}

}  // namespace

Lattice build_LM(const LmnSpec& spec) {
  if (spec.k < 1) throw Error("lmn: k must be >= 1");
  Pieces p = pieces_of(spec);
  int k = spec.k, d = p.d, n = p.M.rank();

  RatMat amb = upsilon_k_gram(spec.pair.parent, k);
  // generators: (m, -m, 0...) and coordinate shifts, then (dd, 0...) over
  // a basis of M cap N; k*n rows, independent by the block structure
  RatMat gens(size_t(k) * n, size_t(k) * d);
  int row = 0;
  for (int shift = 0; shift + 1 < k; ++shift)
    for (int i = 0; i < n; ++i, ++row)
      for (int j = 0; j < d; ++j) {
        gens.at(row, shift * d + j) = p.M.basis().at(i, j);
        gens.at(row, (shift + 1) * d + j) = -p.M.basis().at(i, j);
      }
  for (int i = 0; i < n; ++i, ++row)
    for (int j = 0; j < d; ++j) gens.at(row, j) = p.MN.basis().at(i, j);

  Lattice lm = canonicalized(Lattice(std::move(amb), std::move(gens), spec.label + ".L_M"));

  // every basis row must lie in M^k with block sum in M cap N
  for (int i = 0; i < lm.rank(); ++i) {
    RatVec sum_blocks(d, Rat(0));
    for (int b = 0; b < k; ++b) {
      RatVec block(d);
      for (int j = 0; j < d; ++j) block[j] = lm.basis().at(i, b * d + j);
      if (!member(p.M, block)) throw Error("lmn: L_M generator outside M^k");
      sum_blocks = add(sum_blocks, block);
    }
    if (!member(p.MN, sum_blocks)) throw Error("lmn: L_M generator sum outside M cap N");
  }
  if (!classify(lm).is_even) throw Error("lmn: L_M is not even");
  return lm;
}

Lattice build_LN_diagonal(const LmnSpec& spec) {
  if (spec.k < 1) throw Error("lmn: k must be >= 1");
  Pieces p = pieces_of(spec);
  int k = spec.k, d = p.d, n = p.N.rank();
  RatMat amb = upsilon_k_gram(spec.pair.parent, k);
  RatMat gens(n, size_t(k) * d);
  for (int i = 0; i < n; ++i)
    for (int b = 0; b < k; ++b)
      for (int j = 0; j < d; ++j) gens.at(i, b * d + j) = p.N.basis().at(i, j);
  return Lattice(std::move(amb), std::move(gens), spec.label + ".L^N");
}

MuBounds mu_bounds(const LmnSpec& spec, const MuInputs& mus) {
  MuBounds b;
  b.mu_M = mus.mu_M.value;
  b.mu_N = mus.mu_N.value;
  b.mu_U = mus.mu_U.value;
  b.mu_MU = std::min(b.mu_M, b.mu_U);
  Rat k(spec.k);
  if (spec.k == 1) {
    // L(M,N,1) = N; the k >= 2 formulas rely on the difference vectors
    b.lower = b.mu_N;
    b.upper = b.mu_N;
  } else {
    b.lower = std::min(Rat(k / 2 * b.mu_U), Rat(2 * b.mu_MU));
    b.upper = std::min(Rat(k * b.mu_N), Rat(2 * b.mu_MU));
  }
  if (b.lower > b.upper) throw Error("mu_bounds: lower exceeded upper");
  b.l_is_even = (spec.k % 2 == 0) || classify(half_y(spec.pair)).is_even;
  b.lower_effective = b.lower;
  if (b.l_is_even) {
    // minimum norm of an even lattice is an even integer
    Int twice_ceil;
    Rat half = b.lower / 2;
    mpz_cdiv_q(twice_ceil.get_mpz_t(), half.get_num().get_mpz_t(), half.get_den().get_mpz_t());
    b.lower_effective = Rat(2 * twice_ceil);
  }
  b.tainted = !(mus.mu_M.certified && mus.mu_N.certified && mus.mu_U.certified);
  return b;
}

std::vector<LmnWitness> upper_witness(const LmnSpec& spec, const LmnResult& result) {
  Pieces p = pieces_of(spec);
  int k = spec.k;
  std::vector<LmnWitness> out;
  EnumOptions first;
  first.stop_after_first = true;
  first.collect = true;

  auto push = [&](const std::string& kind, const RatVec& v) {
    LmnWitness w;
    w.kind = kind;
    w.vector = v;
    w.norm = norm_under(result.L.ambient_gram(), v);
    if (!member(result.L, v)) throw Error("upper_witness: vector is not in L");
    out.push_back(std::move(w));
  };

  // (y,...,y) for minimal y in N: norm k * mu(N)
  {
    EnumerationReport rep = enumerate_short(p.N, result.bounds.mu_N, first);
    if (rep.witnesses.empty()) throw Error("upper_witness: no minimal vector in N");
    RatVec y = rep.witnesses.front();
    RatVec diag(size_t(k) * p.d, Rat(0));
    for (int b = 0; b < k; ++b)
      for (int j = 0; j < p.d; ++j) diag[b * p.d + j] = y[j];
    push("diagonal", diag);
    if (out.back().norm != Rat(k) * result.bounds.mu_N)
      throw Error("upper_witness: diagonal norm mismatch");
  }
  // (x,-x,0...) for minimal x in M: norm 2 mu(M)
  if (k >= 2) {
    EnumerationReport rep = enumerate_short(p.M, result.bounds.mu_M, first);
    if (rep.witnesses.empty()) throw Error("upper_witness: no minimal vector in M");
    RatVec x = rep.witnesses.front();
    RatVec v = embedded(x, 0, k);
    RatVec neg = embedded(negated(x), 1, k);
    v = add(v, neg);
    push("difference", v);
    if (out.back().norm != Rat(2) * result.bounds.mu_M)
      throw Error("upper_witness: difference norm mismatch");
  }
  // (dd, 0...) for minimal dd in M cap N: norm 2 mu(U)
  if (k >= 2) {
    EnumerationReport rep = enumerate_short(p.MN, Rat(2) * result.bounds.mu_U, first);
    if (rep.witnesses.empty()) throw Error("upper_witness: no minimal vector in M cap N");
    push("intersection", embedded(rep.witnesses.front(), 0, k));
    if (out.back().norm != Rat(2) * result.bounds.mu_U)
      throw Error("upper_witness: intersection norm mismatch");
  }
  return out;
}

LmnResult build_L(const LmnSpec& spec, const MuInputs& mus) {
  LmnResult r;
  r.spec = spec;
  r.L_M = build_LM(spec);
  r.L_N_diag = build_LN_diagonal(spec);
  r.L = canonicalized(sum(r.L_M, r.L_N_diag)).with_label(spec.label);
  r.report = classify(r.L);

  Pieces p = pieces_of(spec);
  int n = p.M.rank();

  if (!r.report.is_integral) throw Error("lmn: L is not integral");
  if (!r.report.is_unimodular) throw Error("lmn: L is not unimodular");
  bool expect_even = (spec.k % 2 == 0) || classify(p.N).is_even;
  if (r.report.is_even != expect_even)
    throw Error("lmn: evenness disagrees with (k even or N even)");

  // index chain of the unimodularity proof: |L : L_M| = 2^(n/2),
  // det(L_M) = 2^n, and the index-determinant identity throughout
  Rat det_lm = classify(r.L_M).det;
  Int two_n;
  mpz_ui_pow_ui(two_n.get_mpz_t(), 2, n);
  if (det_lm != Rat(two_n)) throw Error("lmn: det(L_M) != 2^rank(M)");
  Int idx = index(r.L, r.L_M);
  Int expected = Int(1) << (n / 2);
  if (idx != expected) throw Error("lmn: |L : L_M| != 2^(rank(M)/2)");
  if (!check_index_det(r.L, r.L_M)) throw Error("lmn: index-determinant failed");

  r.bounds = mu_bounds(spec, mus);
  r.witnesses = upper_witness(spec, r);
  // the witnesses realize the upper bound: the best of them matches
  Rat best = r.witnesses.front().norm;
  for (const auto& w : r.witnesses) best = std::min(best, w.norm);
  if (best != r.bounds.upper)
    throw Error("lmn: witness norms disagree with the upper bound");
  return r;
}

std::string to_string(Rank72Verdict v) {
  switch (v) {
    case Rank72Verdict::norm4: return "norm4";
    case Rank72Verdict::norm6: return "norm6";
    case Rank72Verdict::pending_6_or_8: return "pending_6_or_8";
    default: return "unknown";
  }
}

Rank72Verdict rank72_verdict(const LmnSpec& spec, const EnumOptions& opts) {
  if (spec.k != 3) throw Error("rank72_verdict: k must be 3");
  Pieces p = pieces_of(spec);
  if (p.M.rank() != 24) throw Error("rank72_verdict: halves must be rank 24");

  EnumOptions o = opts;
  o.collect = false;
  auto rootless = [&](const Lattice& l) {
    EnumerationReport rep = enumerate_short(l, Rat(2), o);
    if (!rep.exhaustive) throw Error("rank72_verdict: root check not exhaustive");
    return rep.counts_by_norm.empty();
  };

  bool u_rootless = rootless(spec.pair.parent);
  bool m_rootless = rootless(p.M);
  if (!m_rootless || !u_rootless) return Rank72Verdict::norm4;
  bool n_rootless = rootless(p.N);
  if (!n_rootless) return Rank72Verdict::norm6;
  return Rank72Verdict::pending_6_or_8;
}

MuValue certified_even_min_norm(const Lattice& l, const Rat& expected, const EnumOptions& opts) {
  LatticeReport rep = classify(l);
  if (!rep.is_even) throw Error("certified_even_min_norm: lattice is not even");
  if (!is_even_integer(expected) || expected < 2)
    throw Error("certified_even_min_norm: expected norm must be a positive even integer");
  EnumOptions sweep = opts;
  sweep.collect = false;
  sweep.stop_after_first = false;
  if (expected > 2) {
    // nothing strictly below: norms are even, so a sweep at expected-2 settles it
    EnumerationReport below = enumerate_short(l, expected - 2, sweep);
    if (!below.exhaustive)
      throw Error("certified_even_min_norm: sweep below the target was not exhaustive");
    if (!below.counts_by_norm.empty())
      throw Error("certified_even_min_norm: found a vector below the expected minimum");
  }
  EnumOptions first = opts;
  first.collect = false;
  first.stop_after_first = true;
  EnumerationReport at = enumerate_short(l, expected, first);
  if (at.counts_by_norm.empty())
    throw Error("certified_even_min_norm: no vector at the expected minimum");
  return {expected, true};
}

LmnSpec preset(const std::string& name) {
  LmnSpec spec;
  spec.label = name;
  if (name == "leech24") {
    spec.pair = standard_pair("E8");
    spec.k = 3;
  } else if (name == "rank72_case4") {
    spec.pair = standard_pair("E8_cubed");
    spec.k = 3;
  } else if (name == "rank72_case6" || name == "rank72_case") {
    spec.pair = standard_pair("Leech");
    spec.k = 3;
  } else if (name == "rank72_leech_leech") {
    spec.pair = standard_pair("Leech_Leech");
    spec.k = 3;
  } else if (name == "rank96") {
    spec.pair = standard_pair("Leech");
    spec.k = 4;
  } else if (name == "rank120") {
    spec.pair = standard_pair("Leech");
    spec.k = 5;
  } else if (name == "rank128") {
    spec.pair = standard_pair("BW32");
    spec.k = 4;
  } else {
    throw Error("unknown preset '" + name + "'");
  }
  return spec;
}

}  // namespace latpol
