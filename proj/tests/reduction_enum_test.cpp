#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "latpol/catalog.hpp"
#include "latpol/enumerate.hpp"
#include "oracles.hpp"

using namespace latpol;

namespace {

std::map<Rat, unsigned long long> box_counts(const Lattice& l, const Rat& bound) {
  std::map<Rat, unsigned long long> counts;
  for (const RatVec& v : oracle::box_enumerate(l, bound))
    ++counts[norm_under(l.ambient_gram(), v)];
  return counts;
}

Lattice scrambled(const Lattice& l, Prng& rng) {
  IntMat u = oracle::random_unimodular(l.rank(), rng, 25);
  return Lattice(l.ambient_gram(), to_rational(u) * l.basis(), l.label());
}

}  // namespace

TEST_CASE("lll: reduced Z^n stays Z^n; delta range enforced") {
  Lattice z3 = make_standard("Z3");
  Lattice red = lll(z3);
  CHECK(equal_lattices(red, z3));
  RatMat g = gram(red);
  for (int i = 0; i < 3; ++i) CHECK(g.at(i, i) == 1);
  CHECK_THROWS_AS(lll(z3, rat(1, 4)), Error);
  CHECK_THROWS_AS(lll(z3, Rat(1)), Error);
}

TEST_CASE("lll: scrambled E8 basis recovers a norm-2 first vector") {
  Prng rng(2024);
  Lattice e8 = make_standard("E8");
  for (int trial = 0; trial < 5; ++trial) {
    Lattice messy = scrambled(e8, rng);
    Lattice red = lll(messy);
    CHECK(equal_lattices(red, e8));
    CHECK(gram(red).at(0, 0) == 2);
    CHECK(classify(red).det == 1);
  }
}

TEST_CASE("lll: Leech raw basis shrinks, determinant preserved") {
  Lattice leech = make_standard("Leech_turyn");
  Lattice red = lll(leech);
  CHECK(classify(red).det == 1);
  Rat max_diag(0);
  RatMat g = gram(red);
  for (int i = 0; i < 24; ++i) max_diag = std::max(max_diag, g.at(i, i));
  CHECK(max_diag <= 8);  // minimum 4; a reduced basis stays close to it
  CHECK(equal_lattices(red, leech));
}

TEST_CASE("enumerate: Z2 count at bound 1, E8 against the box oracle") {
  Lattice z2 = make_standard("Z2");
  EnumerationReport r = enumerate_short(z2, Rat(1));
  CHECK(r.exhaustive);
  CHECK(r.counts_by_norm[Rat(1)] == 4);

  Lattice e8 = make_standard("E8");
  for (long b : {2L, 4L}) {
    EnumerationReport er = enumerate_short(e8, Rat(b));
    auto expected = box_counts(e8, Rat(b));
    CHECK(er.counts_by_norm == expected);
  }
}

TEST_CASE("enumerate: counts are plus-minus symmetric and norms even on even lattices") {
  Lattice d4 = make_standard("D4");
  EnumOptions opts;
  opts.collect = true;
  EnumerationReport r = enumerate_short(d4, Rat(4), opts);
  for (const auto& [norm, count] : r.counts_by_norm) {
    CHECK(count % 2 == 0);
    CHECK(is_even_integer(norm));
  }
  // each witness appears with its negative
  for (const RatVec& v : r.witnesses) {
    RatVec neg = negated(v);
    CHECK(std::find(r.witnesses.begin(), r.witnesses.end(), neg) != r.witnesses.end());
  }
}

TEST_CASE("enumerate: invariance under unimodular basis change and thread split") {
  Prng rng(555);
  Lattice d5 = make_standard("D5");
  EnumerationReport base = enumerate_short(d5, Rat(4));
  for (int trial = 0; trial < 4; ++trial) {
    EnumerationReport again = enumerate_short(scrambled(d5, rng), Rat(4));
    CHECK(again.counts_by_norm == base.counts_by_norm);
  }
  EnumOptions two;
  two.threads = 2;
  EnumerationReport split = enumerate_short(d5, Rat(4), two);
  CHECK(split.counts_by_norm == base.counts_by_norm);
  EnumOptions three;
  three.threads = 3;
  three.collect = true;
  EnumOptions one;
  one.collect = true;
  CHECK(enumerate_short(d5, Rat(4), three).witnesses ==
        enumerate_short(d5, Rat(4), one).witnesses);
}

TEST_CASE("enumerate: node budget yields a partial, non-exhaustive report") {
  Lattice e8 = make_standard("E8");
  EnumOptions opts;
  opts.node_budget = 10;
  EnumerationReport r = enumerate_short(e8, Rat(4), opts);
  CHECK(!r.exhaustive);
}

TEST_CASE("enumerate: rank policy refusal unless forced") {
  // rank 40 > default cap 32
  Lattice z40(to_rational(IntMat::identity(40)), to_rational(IntMat::identity(40)));
  CHECK_THROWS_AS(enumerate_short(z40, Rat(1)), PolicyRefusal);
  EnumOptions force;
  force.force_rank = true;
  EnumerationReport r = enumerate_short(z40, Rat(1), force);
  CHECK(r.counts_by_norm[Rat(1)] == 80);
}

TEST_CASE("enumerate_coset: shifted lattice and 2Z + 1") {
  Lattice z2 = make_standard("Z2");
  RatVec zero(2, Rat(0));
  EnumerationReport r = enumerate_coset(z2, zero, Rat(1));
  CHECK(r.counts_by_norm[Rat(0)] == 1);  // the zero vector belongs to the coset
  CHECK(r.counts_by_norm[Rat(1)] == 4);

  Lattice two_z(to_rational(IntMat::identity(1)),
                to_rational(IntMat::identity(1)).scaled(Rat(2)));
  EnumOptions copt;
  copt.collect = true;
  EnumerationReport odd = enumerate_coset(two_z, {Rat(1)}, Rat(1), copt);
  CHECK(odd.counts_by_norm[Rat(1)] == 2);  // +1 and -1
  REQUIRE(odd.witnesses.size() == 2);
  CHECK(odd.witnesses[0][0] == -1);
  CHECK(odd.witnesses[1][0] == 1);
}

TEST_CASE("enumerate_coset agrees with a bounded box search on small cosets") {
  Prng rng(808);
  Lattice d4 = make_standard("D4");
  for (int trial = 0; trial < 6; ++trial) {
    RatVec t(4);
    for (int i = 0; i < 4; ++i) t[i] = rat(long(rng.below(5)) - 2, 2);
    EnumerationReport r = enumerate_coset(d4, t, Rat(3));
    // oracle: scan d4 box at a larger bound and shift
    unsigned long long expected = 0;
    std::map<Rat, unsigned long long> expected_counts;
    Rat tn = norm_under(d4.ambient_gram(), t);
    // all v = t + u with |v| <= 3: scan u in a box of norm <= (sqrt3 + |t|)^2
    Rat big = Rat(9) + 4 * tn;  // generous
    auto all_u = oracle::box_enumerate(d4, big);
    all_u.push_back(RatVec(4, Rat(0)));
    for (const RatVec& u : all_u) {
      RatVec v = add(t, u);
      Rat nv = norm_under(d4.ambient_gram(), v);
      if (nv <= 3) {
        ++expected;
        ++expected_counts[nv];
      }
    }
    unsigned long long got = 0;
    for (auto& [k, c] : r.counts_by_norm) got += c;
    CHECK(got == expected);
    CHECK(r.counts_by_norm == expected_counts);
  }
}

TEST_CASE("min_norm: E8 certified 2, Leech certified 4, high rank uncertified") {
  MinNormResult e8 = min_norm(make_standard("E8"));
  CHECK(e8.mu == 2);
  CHECK(e8.certified);
  CHECK(norm_under(make_standard("E8").ambient_gram(), e8.witness) == 2);

  MinNormResult leech = min_norm(make_standard("Leech_turyn"));
  CHECK(leech.mu == 4);
  CHECK(leech.certified);

  Lattice z40(to_rational(IntMat::identity(40)), to_rational(IntMat::identity(40)));
  MinNormResult big = min_norm(z40);
  CHECK(!big.certified);
  CHECK(big.mu == 1);  // upper witness from the reduced basis
}

TEST_CASE("min_norm witness tie-break is reproducible") {
  Prng rng(4242);
  Lattice d4 = make_standard("D4");
  MinNormResult base = min_norm(d4);
  for (int trial = 0; trial < 4; ++trial) {
    MinNormResult again = min_norm(scrambled(d4, rng));
    CHECK(again.mu == base.mu);
    CHECK(again.witness == base.witness);  // lexicographic minimum is basis-free
  }
}

TEST_CASE("identify_root_system: D4, E8^3, Leech") {
  RootSystemId d4 = identify_root_system(make_standard("D4"));
  REQUIRE(d4.components.size() == 1);
  CHECK(d4.components[0].type == 'D');
  CHECK(d4.components[0].rank == 4);
  CHECK(d4.total_roots == 24);

  RootSystemId e83 = identify_root_system(make_standard("E8_cubed"));
  REQUIRE(e83.components.size() == 3);
  for (const auto& c : e83.components) {
    CHECK(c.type == 'E');
    CHECK(c.rank == 8);
    CHECK(c.root_count == 240);
  }
  CHECK(e83.total_roots == 720);
  CHECK(!e83.ambiguous);

  RootSystemId leech = identify_root_system(make_standard("Leech_turyn"));
  CHECK(leech.components.empty());
  CHECK(leech.total_roots == 0);
}

TEST_CASE("identify_root_system: A-series counts") {
  // A2 as the hexagonal lattice
  RatMat g(2, 2);
  g.at(0, 0) = 2;
  g.at(0, 1) = -1;
  g.at(1, 0) = -1;
  g.at(1, 1) = 2;
  Lattice a2(std::move(g), to_rational(IntMat::identity(2)));
  RootSystemId id = identify_root_system(a2);
  REQUIRE(id.components.size() == 1);
  CHECK(id.components[0].type == 'A');
  CHECK(id.components[0].rank == 2);
  CHECK(id.components[0].root_count == 6);
}
