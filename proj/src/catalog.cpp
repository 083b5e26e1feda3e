#include "latpol/catalog.hpp"

#include <array>
#include <functional>
#include <map>
#include <mutex>
#include <set>

#include "latpol/enumerate.hpp"
#include "latpol/lmn.hpp"
#include "latpol/polarization.hpp"

namespace latpol {

namespace {

RatMat identity_gram(int n) { return to_rational(IntMat::identity(n)); }

Lattice zn(int n) {
  if (n < 1) throw Error("Zn needs n >= 1");
  return Lattice(identity_gram(n), to_rational(IntMat::identity(n)), "Z" + std::to_string(n));
}

// D_n = { x in Z^n : sum x_i even }.
Lattice dn(int n) {
  if (n < 2) throw Error("Dn needs n >= 2");
  RatMat b(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    b.at(i, i) = 1;
    b.at(i, i + 1) = -1;
  }
  b.at(n - 1, n - 2) = 1;
  b.at(n - 1, n - 1) = 1;
  return Lattice(identity_gram(n), std::move(b), "D" + std::to_string(n));
}

// E8 = D8 + (1/2,...,1/2), HNF-canonical basis.
Lattice e8() {
  Lattice d8 = dn(8);
  RatMat glue(1, 8);
  for (int j = 0; j < 8; ++j) glue.at(0, j) = rat(1, 2);
  Lattice l = canonicalized(sum(Lattice(identity_gram(8), d8.basis()),
                                Lattice(identity_gram(8), std::move(glue))));
  LatticeReport rep = classify(l);
  if (!(rep.rank == 8 && rep.is_even && rep.is_unimodular))
    throw Error("E8 construction failed verification");
  return l.with_label("E8");
}

Lattice e8_cubed() {
  Lattice e = e8();
  Lattice l = direct_sum(direct_sum(e, e), e).with_label("E8^3");
  LatticeReport rep = classify(l);
  if (!(rep.rank == 24 && rep.is_even && rep.is_unimodular))
    throw Error("E8^3 construction failed verification");
  return l;
}

// Block-diagonal rotation by 90 degrees in consecutive coordinate planes;
// quaternionic left-i on each 4-coordinate block.
RatMat j_planes(int dim) {
  if (dim % 2) throw Error("fourvolution needs even dimension");
  RatMat j(dim, dim);
  for (int p = 0; p < dim / 2; ++p) {
    j.at(2 * p, 2 * p + 1) = 1;
    j.at(2 * p + 1, 2 * p) = -1;
  }
  return j;
}

// Companion fourvolution of E8, repeated block-diagonally on each
// 8-coordinate chunk. Unlike the plane rotation J it maps (J-1)E8 onto
// itself while acting nontrivially mod 2 on its image: the mod-2 fixed
// spaces of the two maps meet in dimension 2 only. That is what lets a
// totally singular complement be chosen stable under it -- a complement of
// im(J+1) can never be J-stable mod 2, since im(J+1) IS the mod-2 fixed
// space of J. Entries are halves; the table holds numerators over 2.
RatMat phi_blocks(int dim) {
  if (dim % 8) throw Error("companion fourvolution needs dimension divisible by 8");
  static const int num[8][8] = {
      {0, 0, 1, -1, 0, 0, -1, -1},
      {0, 0, -1, -1, 0, 0, -1, 1},
      {-1, 1, 0, 0, -1, -1, 0, 0},
      {1, 1, 0, 0, -1, 1, 0, 0},
      {0, 0, 1, 1, 0, 0, -1, 1},
      {0, 0, 1, -1, 0, 0, 1, 1},
      {1, 1, 0, 0, 1, -1, 0, 0},
      {1, -1, 0, 0, -1, -1, 0, 0},
  };
  RatMat a(dim, dim);
  for (int b = 0; b < dim / 8; ++b)
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) a.at(8 * b + i, 8 * b + j) = rat(num[i][j], 2);
  return a;
}

// permutation of the k ambient blocks of width d
RatMat block_permutation(const std::vector<int>& image_of, int d) {
  int k = int(image_of.size());
  RatMat p(k * d, k * d);
  for (int b = 0; b < k; ++b)
    for (int j = 0; j < d; ++j) p.at(b * d + j, image_of[b] * d + j) = 1;
  return p;
}

std::mutex cache_mutex;
std::map<std::string, Lattice> lattice_cache;
std::map<std::string, Fourvolution> fourvolution_cache;

Lattice cached(const std::string& key, const std::function<Lattice()>& build) {
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = lattice_cache.find(key);
    if (it != lattice_cache.end()) return it->second;
  }
  Lattice l = build();
  std::lock_guard<std::mutex> lock(cache_mutex);
  return lattice_cache.emplace(key, std::move(l)).first->second;
}

Lattice build_from_pair(const std::string& pair_name, int k, const std::string& label, int rank,
                        bool require_rootless) {
  LmnSpec spec;
  spec.pair = standard_pair(pair_name);
  spec.k = k;
  spec.label = label;
  Lattice l = canonicalized(sum(build_LM(spec), build_LN_diagonal(spec))).with_label(label);
  LatticeReport rep = classify(l);
  if (!(rep.rank == rank && rep.is_even && rep.is_unimodular))
    throw Error(label + " construction failed verification");
  if (require_rootless) {
    EnumerationReport roots = enumerate_short(l, Rat(2), EnumOptions{});
    if (!roots.exhaustive || !roots.counts_by_norm.empty())
      throw Error(label + " construction is not rootless");
  }
  return l;
}

}  // namespace

Lattice transformed(const Lattice& l, const RatMat& map) {
  return Lattice(l.ambient_gram(), l.basis() * map, l.label());
}

bool is_isometry_of(const Lattice& l, const RatMat& map) {
  int d = l.ambient_dim();
  if (map.rows() != d || map.cols() != d) return false;
  if (map * l.ambient_gram() * map.transpose() != l.ambient_gram()) return false;
  return equal_lattices(transformed(l, map), l);
}

bool is_valid_fourvolution(const Lattice& l, const RatMat& map) {
  int d = l.ambient_dim();
  if (map.rows() != d || map.cols() != d) return false;
  RatMat sq = map * map;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (sq.at(i, j) != (i == j ? Rat(-1) : Rat(0))) return false;
  return is_isometry_of(l, map);
}

IntMat isometry_on_basis(const Lattice& l, const RatMat& map) {
  RatMat t = l.basis().transpose();
  IntMat coords(l.rank(), l.rank());
  for (int i = 0; i < l.rank(); ++i) {
    RatVec image = l.basis().row(i) * map;
    SolveResult s = solve(t, image);
    if (s.status != SolveStatus::ok) throw Error("isometry_on_basis: image left the span");
    for (int j = 0; j < l.rank(); ++j) {
      if (!is_integer(s.x[j])) throw Error("isometry_on_basis: map does not preserve the lattice");
      coords.at(i, j) = s.x[j].get_num();
    }
  }
  Int d = det(coords);
  if (d != 1 && d != -1) throw Error("isometry_on_basis: coordinate matrix is not unimodular");
  return coords;
}

Fourvolution builtin_fourvolution(const std::string& name) {
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = fourvolution_cache.find(name);
    if (it != fourvolution_cache.end()) return it->second;
  }
  Fourvolution f;
  f.name = name;
  if (name == "J_E8") {
    f.parent = make_standard("E8");
    f.matrix = j_planes(8);
  } else if (name == "J_E8_cubed") {
    f.parent = make_standard("E8_cubed");
    f.matrix = j_planes(24);
  } else if (name == "F_BW32") {
    f.parent = make_standard("BW32");
    f.matrix = phi_blocks(32);
  } else if (name == "F_Leech") {
    f.parent = make_standard("Leech_turyn");
    f.matrix = phi_blocks(24);
  } else if (name == "Phi_E8") {
    f.parent = make_standard("E8");
    f.matrix = phi_blocks(8);
  } else {
    throw Error("unknown fourvolution '" + name + "'");
  }
  if (!is_valid_fourvolution(f.parent, f.matrix))
    throw Error("fourvolution '" + name + "' failed validation");
  std::lock_guard<std::mutex> lock(cache_mutex);
  return fourvolution_cache.emplace(name, std::move(f)).first->second;
}

Lattice fourvolution_sublattice(const Lattice& l, const Fourvolution& f) {
  if (!is_valid_fourvolution(l, f.matrix))
    throw Error("fourvolution is not valid for this lattice");
  RatMat shifted = f.matrix;
  for (int i = 0; i < shifted.rows(); ++i) shifted.at(i, i) -= 1;
  Lattice image = canonicalized(Lattice(l.ambient_gram(), l.basis() * shifted));
  // (f-1) doubles inner products; the image has index 2^(n/2) and applying
  // the shift twice returns exactly 2l
  Int idx = index(l, image);
  Int expected = Int(1) << (l.rank() / 2);
  if (idx != expected) throw Error("fourvolution image has the wrong index");
  if (!check_index_det(l, image)) throw Error("fourvolution image fails index-determinant");
  Lattice twice = canonicalized(Lattice(l.ambient_gram(), image.basis() * shifted));
  Lattice doubled = canonicalized(Lattice(l.ambient_gram(), l.basis().scaled(Rat(2))));
  if (!equal_lattices(twice, doubled)) throw Error("(f-1)^2 did not double the lattice");
  return image;
}

Lattice make_standard(const std::string& name) {
  return cached(name, [&]() -> Lattice {
    if (name == "E8") return e8();
    if (name == "E8_cubed") return e8_cubed();
    if (name == "BW32") return build_from_pair("E8", 4, "BW32", 32, true);
    if (name == "Leech_turyn") return build_from_pair("E8", 3, "Leech", 24, true);
    if (name.size() > 1 && (name[0] == 'Z' || name[0] == 'D')) {
      int n = 0;
      try {
        n = std::stoi(name.substr(1));
      } catch (...) {
        throw Error("unknown lattice '" + name + "'");
      }
      return name[0] == 'Z' ? zn(n) : dn(n);
    }
    throw Error("unknown lattice '" + name + "'");
  });
}

namespace {

// Fast random-walk sampler for isometries of E8 that stabilize both halves
// of the standard polarization. Works on 8x8 integer coordinate matrices
// (entries of Weyl-group elements stay small), so millions of words per
// second are cheap. Deterministic for a fixed seed.
std::vector<IntMat> sample_e8_pair_stabilizer(int want, uint64_t seed, long max_trials) {
  Lattice e8 = make_standard("E8");
  PolarizationPair pr = standard_pair("E8");

  EnumOptions opts;
  opts.collect = true;
  auto roots_rep = enumerate_short(e8, Rat(2), opts);
  using Mat8 = std::array<std::array<long, 8>, 8>;
  std::vector<Mat8> refl;
  for (const RatVec& r : roots_rep.witnesses) {
    RatMat m(8, 8);
    for (int i = 0; i < 8; ++i) {
      RatVec ei(8, Rat(0));
      ei[i] = 1;
      Rat ip = inner_under(e8.ambient_gram(), ei, r);
      for (int j = 0; j < 8; ++j) m.at(i, j) = (i == j ? Rat(1) : Rat(0)) - ip * r[j];
    }
    IntMat c = isometry_on_basis(e8, m);
    Mat8 mm{};
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) mm[i][j] = c.at(i, j).get_si();
    refl.push_back(mm);
  }

  auto coord_hnf = [&](const Lattice& sub) {
    RatMat t = e8.basis().transpose();
    IntMat c(8, 8);
    for (int i = 0; i < 8; ++i) {
      SolveResult s = solve(t, sub.basis().row(i));
      for (int j = 0; j < 8; ++j) c.at(i, j) = s.x[j].get_num();
    }
    return hnf(c).h;
  };
  IntMat HX = coord_hnf(pr.X), HY = coord_hnf(pr.Y);
  RatMat HXi = inverse(to_rational(HX)), HYi = inverse(to_rational(HY));

  auto stabilizes = [&](const Mat8& w, const IntMat& H, const RatMat& Hi) {
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        Rat acc(0);
        for (int k = 0; k < 8; ++k) {
          long hw = 0;
          for (int l = 0; l < 8; ++l) hw += H.at(i, l).get_si() * w[l][k];
          if (hw) acc += Rat(hw) * Hi.at(k, j);
        }
        if (!is_integer(acc)) return false;
      }
    return true;
  };

  auto mul = [](const Mat8& a, const Mat8& b) {
    Mat8 c{};
    for (int i = 0; i < 8; ++i)
      for (int k = 0; k < 8; ++k) {
        long v = a[i][k];
        if (!v) continue;
        for (int j = 0; j < 8; ++j) c[i][j] += v * b[k][j];
      }
    return c;
  };

  Prng rng(seed);
  std::vector<IntMat> found;
  std::set<std::array<long, 64>> seen;
  for (long trial = 0; trial < max_trials && int(found.size()) < want; ++trial) {
    Mat8 w{};
    for (int i = 0; i < 8; ++i) w[i][i] = 1;
    int len = 6 + int(rng.below(9));
    for (int i = 0; i < len; ++i) w = mul(w, refl[rng.below(refl.size())]);
    if (!stabilizes(w, HX, HXi) || !stabilizes(w, HY, HYi)) continue;
    std::array<long, 64> key{};
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) key[8 * i + j] = w[i][j];
    if (!seen.insert(key).second) continue;
    IntMat c(8, 8);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) c.at(i, j) = Int(w[i][j]);
    found.push_back(std::move(c));
  }
  return found;
}

std::mutex pool_mutex;
std::map<std::string, std::vector<RatMat>> pool_cache;

}  // namespace

std::vector<RatMat> known_isometries(const std::string& name) {
  {
    std::lock_guard<std::mutex> lock(pool_mutex);
    auto it = pool_cache.find(name);
    if (it != pool_cache.end()) return it->second;
  }
  std::vector<RatMat> out;
  if (name != "Leech_turyn") return out;
  Lattice l = make_standard("Leech_turyn");
  RatMat phi = phi_blocks(24);
  std::vector<std::vector<int>> perms = {{0, 1, 2}, {1, 0, 2}, {0, 2, 1},
                                         {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
  std::vector<RatMat> powers;
  RatMat cur = to_rational(IntMat::identity(24));
  for (int t = 0; t < 4; ++t) {
    powers.push_back(cur);
    cur = cur * phi;
  }
  for (const auto& p : perms)
    for (const auto& r : powers) {
      RatMat cand = block_permutation(p, 8) * r;
      if (is_isometry_of(l, cand)) out.push_back(cand);
    }
  // pair-stabilizer elements of the E8 polarization, applied to all three
  // blocks at once; these move the mod-2 image of (F_Leech - 1) around,
  // which the visible 24-element group above never does
  Lattice e8 = make_standard("E8");
  RatMat binv = inverse(e8.basis());
  for (const IntMat& c : sample_e8_pair_stabilizer(12, 0x5eedc0de, 2'000'000)) {
    RatMat a8 = binv * to_rational(c) * e8.basis();
    RatMat a24(24, 24);
    for (int b = 0; b < 3; ++b)
      for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) a24.at(8 * b + i, 8 * b + j) = a8.at(i, j);
    if (is_isometry_of(l, a24)) out.push_back(a24);
  }
  std::lock_guard<std::mutex> lock(pool_mutex);
  return pool_cache.emplace(name, std::move(out)).first->second;
}

}  // namespace latpol
