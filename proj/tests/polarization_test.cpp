#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "latpol/enumerate.hpp"
#include "latpol/json_io.hpp"
#include "latpol/polarization.hpp"
#include "oracles.hpp"

using namespace latpol;

TEST_CASE("mod2_space: E8 has dimension 8 and Witt index 4") {
  Lattice e8 = make_standard("E8");
  F2QuadraticSpace s = mod2_space(e8);
  CHECK(s.dim == 8);
  CHECK(witt_index(s) == 4);
  // q is well defined: q(u + 2w) = q(u) on lattice representatives
  Prng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    IntVec c(8), w(8);
    for (int i = 0; i < 8; ++i) {
      c[i] = Int(long(rng.below(3)) - 1);
      w[i] = Int(long(rng.below(3)) - 1);
    }
    RatVec u = from_coordinates(e8, c);
    IntVec c2(8);
    for (int i = 0; i < 8; ++i) c2[i] = c[i] + 2 * w[i];
    RatVec u2 = from_coordinates(e8, c2);
    Rat q1 = norm_under(e8.ambient_gram(), u) / 2;
    Rat q2 = norm_under(e8.ambient_gram(), u2) / 2;
    CHECK(is_integer(q1 - q2));
    CHECK(is_even_integer(Rat(q1 - q2)));
  }
}

TEST_CASE("mod2_space rejects non-unimodular input") {
  RatMat g(2, 2);
  g.at(0, 0) = 2;
  g.at(0, 1) = 1;
  g.at(1, 0) = 1;
  g.at(1, 1) = 2;
  Lattice a2(std::move(g), to_rational(IntMat::identity(2)));
  CHECK_THROWS_AS(mod2_space(a2), Error);
}

TEST_CASE("mod2_space: Leech has Witt index 12") {
  F2QuadraticSpace s = mod2_space(make_standard("Leech_turyn"));
  CHECK(s.dim == 24);
  CHECK(witt_index(s) == 12);
}

TEST_CASE("totally singular complement on a split toy space") {
  // two hyperbolic planes over GF(2): dim 4, b(e_i, f_i) = 1, q = 0 on all
  F2QuadraticSpace s;
  s.dim = 4;
  s.bilinear = F2Mat(4, 4);
  s.bilinear.set(0, 1, true);
  s.bilinear.set(1, 0, true);
  s.bilinear.set(2, 3, true);
  s.bilinear.set(3, 2, true);
  s.q_basis = F2Vec(4);
  F2Mat S(2, 4);
  S.set(0, 0, true);
  S.set(1, 2, true);  // span(e1, e2)
  ComplementOpts opts;
  opts.seed = 3;
  auto c = totally_singular_complement(s, S, opts);
  REQUIRE(c.has_value());
  CHECK(c->rows() == 2);
  CHECK(s.totally_singular(*c));
  CHECK(f2_intersection_dim(S, *c) == 0);
}

TEST_CASE("lift: zero and full subspaces, index law") {
  Lattice e8 = make_standard("E8");
  Lattice two(e8.ambient_gram(), e8.basis().scaled(Rat(2)));
  CHECK(equal_lattices(lift(e8, F2Mat(0, 8)), two));
  F2Mat full = F2Mat::identity(8);
  CHECK(equal_lattices(lift(e8, full), e8));
  // a singular maximal subspace lifts to a doubled-norm sublattice
  PolarizationPair pr = standard_pair("E8");
  RatMat gx = gram(pr.X);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) CHECK(is_even_integer(gx.at(i, j)));
}

TEST_CASE("polarize_by_fourvolution: E8 even polarization (full verification)") {
  PolarizationPair p = standard_pair("E8");
  PolarizationCheck c = verify_polarization(p);
  CHECK(c.ok);
  CHECK(c.even_pair);
  CHECK(p.even_polarization);
  CHECK(index(p.parent, p.X) == 16);
  CHECK(index(p.parent, p.Y) == 16);
  // halves are integral unimodular (both actually even here: rank-8 halves
  // are E8 again)
  CHECK(classify(half_x(p)).is_unimodular);
  CHECK(classify(half_y(p)).is_unimodular);
}

TEST_CASE("verify_polarization flags a corrupted pair") {
  PolarizationPair p = standard_pair("E8");
  // drop one generator from Y: the sum check must fail
  RatMat fewer(7, 8);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 8; ++j) fewer.at(i, j) = p.Y.basis().at(i + 1, j);
  PolarizationPair bad = p;
  bad.Y = Lattice(p.Y.ambient_gram(), std::move(fewer));
  PolarizationCheck c = verify_polarization(bad);
  CHECK(!c.ok);
  CHECK(!c.sum_ok);
  CHECK(!c.failures.empty());
}

TEST_CASE("orthogonal sum of three E8 pairs polarizes E8^3") {
  PolarizationPair p = standard_pair("E8_cubed");
  PolarizationCheck c = verify_polarization(p);
  CHECK(c.ok);
  CHECK(p.even_polarization);
  CHECK(p.parent.rank() == 24);
}

TEST_CASE("pair JSON round trip preserves verification") {
  PolarizationPair p = standard_pair("E8");
  Json j = pair_to_json(p);
  PolarizationPair back = pair_from_json(j);
  CHECK(verify_polarization(back).ok);
  CHECK(back.even_polarization == p.even_polarization);
}

TEST_CASE("search_rootless_half: zero budget reports none with zero tries") {
  Lattice leech = make_standard("Leech_turyn");
  Fourvolution f = builtin_fourvolution("F_Leech");
  Lattice x = fourvolution_sublattice(leech, f);
  RootlessSearchStats stats;
  auto r = search_rootless_half(leech, x, 0, 1, &stats);
  CHECK(!r.has_value());
  CHECK(stats.complements_tried == 0);
}

TEST_CASE("search_rootless_half: E8 halves always carry roots") {
  // rank-8 unimodular lattices are E8 (roots) or odd, so no budget can
  // produce a rootless second half; the search must come back empty with
  // the given half itself rejected
  Lattice e8 = make_standard("E8");
  Fourvolution j = builtin_fourvolution("J_E8");
  Lattice x = fourvolution_sublattice(e8, j);
  Lattice half = scale_norms(x, rat(1, 2));
  EnumerationReport roots = enumerate_short(half, Rat(2));
  CHECK(!roots.counts_by_norm.empty());  // the first half already has roots
  CHECK_THROWS_AS(search_rootless_half(e8, x, 50, 1, nullptr), Error);
}

TEST_CASE("search_rootless_half finds the Leech-Leech pair from the pool") {
  Lattice leech = make_standard("Leech_turyn");
  Fourvolution f = builtin_fourvolution("F_Leech");
  Lattice x = fourvolution_sublattice(leech, f);
  RootlessSearchStats stats;
  auto pair = search_rootless_half(leech, x, 4000, 0x5eedbeef, &stats,
                                   known_isometries("Leech_turyn"));
  REQUIRE(pair.has_value());
  CHECK(verify_polarization(*pair).ok);
  for (const Lattice& half : {half_x(*pair), half_y(*pair)}) {
    EnumerationReport roots = enumerate_short(half, Rat(2));
    CHECK(roots.exhaustive);
    CHECK(roots.counts_by_norm.empty());
    CHECK(classify(half).is_even);  // rootless Niemeier: both halves Leech
  }
}

TEST_CASE("fourvolution halves carry the parent's minimum: Leech and BW32") {
  // X = (f-1)U gives a half isometric to U itself; certify mu on the halves
  PolarizationPair leech = standard_pair("Leech");
  MuValue m4 = certified_even_min_norm(half_x(leech), Rat(4));
  CHECK(m4.certified);
  PolarizationPair bw = standard_pair("BW32");
  MuValue b4 = certified_even_min_norm(half_x(bw), Rat(4));
  CHECK(b4.certified);
}

TEST_CASE("every produced pair satisfies the index and image laws") {
  for (const char* name : {"E8", "E8_cubed", "Leech", "BW32"}) {
    PolarizationPair p = standard_pair(name);
    Int expected = Int(1) << (p.parent.rank() / 2);
    CHECK(index(p.parent, p.X) == expected);
    CHECK(index(p.parent, p.Y) == expected);
    CHECK(check_index_det(p.parent, p.X));
    CHECK(check_index_det(p.parent, p.Y));
    CHECK(classify(half_x(p)).is_unimodular);
    CHECK(classify(half_y(p)).is_unimodular);
  }
}
