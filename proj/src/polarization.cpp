#include "latpol/polarization.hpp"

#include <map>
#include <mutex>

#include "latpol/enumerate.hpp"

namespace latpol {

bool F2QuadraticSpace::q(const F2Vec& v) const {
  bool acc = false;
  for (int i = 0; i < dim; ++i) {
    if (!v.get(i)) continue;
    acc ^= q_basis.get(i);
    for (int j = i + 1; j < dim; ++j)
      if (v.get(j)) acc ^= bilinear.get(i, j);
  }
  return acc;
}

bool F2QuadraticSpace::b(const F2Vec& v, const F2Vec& w) const {
  return F2Vec::dot(bilinear.apply(v), w);
}

bool F2QuadraticSpace::totally_singular(const F2Mat& subspace) const {
  for (int i = 0; i < subspace.rows(); ++i) {
    if (q(subspace.row(i))) return false;
    for (int j = i + 1; j < subspace.rows(); ++j)
      if (b(subspace.row(i), subspace.row(j))) return false;
  }
  return true;
}

bool F2QuadraticSpace::totally_isotropic(const F2Mat& subspace) const {
  for (int i = 0; i < subspace.rows(); ++i)
    for (int j = i + 1; j < subspace.rows(); ++j)
      if (b(subspace.row(i), subspace.row(j))) return false;
  return true;
}

F2QuadraticSpace mod2_space(const Lattice& u) {
  LatticeReport rep = classify(u);
  if (!rep.is_even || !rep.is_unimodular)
    throw Error("mod2_space needs an even unimodular lattice");
  RatMat g = gram(u);
  int n = u.rank();
  F2QuadraticSpace s;
  s.dim = n;
  s.bilinear = F2Mat(n, n);
  s.q_basis = F2Vec(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      s.bilinear.set(i, j, mpz_odd_p(g.at(i, j).get_num().get_mpz_t()));
    Int half = g.at(i, i).get_num() / 2;
    s.q_basis.set(i, mpz_odd_p(half.get_mpz_t()));
  }
  // nonsingular: det(G) = 1 is odd, so the mod-2 form has full rank
  if (f2_rank(s.bilinear) != n) throw Error("mod2_space: degenerate bilinear form");
  // q(u+v) = q(u) + q(v) + b(u,v) spot-check on basis pairs
  for (int i = 0; i < std::min(n, 6); ++i)
    for (int j = i + 1; j < std::min(n, 6); ++j) {
      F2Vec e(n);
      e.set(i, true);
      e.set(j, true);
      bool lhs = s.q(e);
      bool rhs = s.q_basis.get(i) ^ s.q_basis.get(j) ^ s.bilinear.get(i, j);
      if (lhs != rhs) throw Error("mod2_space: quadratic law violated");
    }
  return s;
}

namespace {

// perp of a set of rows under the bilinear form
F2Mat b_perp(const F2QuadraticSpace& s, const F2Mat& rows) {
  if (rows.rows() == 0) return F2Mat::identity(s.dim);
  F2Mat constraints = rows * s.bilinear;  // v must satisfy constraints . v = 0
  return f2_decompose(constraints.transpose()).nullspace;
}

}  // namespace

int witt_index(const F2QuadraticSpace& space) {
  // split hyperbolic pairs until the rest is anisotropic
  F2QuadraticSpace s = space;
  int index = 0;
  while (s.dim >= 2) {
    // find a nonzero singular vector
    F2Vec v(s.dim);
    bool found = false;
    for (int i = 0; i < s.dim && !found; ++i) {
      F2Vec e(s.dim);
      e.set(i, true);
      if (!s.q(e)) { v = e; found = true; }
    }
    if (!found) {
      for (int i = 0; i < s.dim && !found; ++i)
        for (int j = i + 1; j < s.dim && !found; ++j) {
          F2Vec e(s.dim);
          e.set(i, true);
          e.set(j, true);
          if (!s.q(e)) { v = e; found = true; }
        }
    }
    if (!found && s.dim >= 3) {
      for (int i = 0; i < s.dim && !found; ++i)
        for (int j = i + 1; j < s.dim && !found; ++j)
          for (int k = j + 1; k < s.dim && !found; ++k) {
            F2Vec e(s.dim);
            e.set(i, true);
            e.set(j, true);
            e.set(k, true);
            if (!s.q(e)) { v = e; found = true; }
          }
    }
    if (!found) break;  // anisotropic
    // partner with b(v,w) = 1
    F2Vec bv = s.bilinear.apply(v);
    int w_idx = -1;
    for (int i = 0; i < s.dim; ++i)
      if (bv.get(i)) { w_idx = i; break; }
    if (w_idx < 0) throw Error("witt_index: singular vector has no partner");
    F2Vec w(s.dim);
    w.set(w_idx, true);
    if (s.q(w)) w.xor_with(v);  // q(w + v) = q(w) + 1
    // restrict to the perp of {v, w}
    F2Mat pair(2, s.dim);
    pair.row(0) = v;
    pair.row(1) = w;
    F2Mat perp = b_perp(s, pair);
    F2QuadraticSpace next;
    next.dim = perp.rows();
    next.bilinear = perp * s.bilinear * perp.transpose();
    next.q_basis = F2Vec(next.dim);
    for (int i = 0; i < next.dim; ++i) next.q_basis.set(i, s.q(perp.row(i)));
    s = std::move(next);
    ++index;
  }
  return index;
}

std::optional<F2Mat> totally_singular_complement(const F2QuadraticSpace& space, const F2Mat& S,
                                                 const ComplementOpts& opts) {
  int n = space.dim;
  int target = n / 2;
  if (S.rows() != target || !space.totally_singular(S))
    throw Error("complement search needs a maximal totally singular S");

  Prng rng(opts.seed);
  for (int attempt = 0; attempt < opts.tries; ++attempt) {
    F2Mat chosen(0, n);
    int stuck = 0;
    while (chosen.rows() < target && stuck < 400) {
      F2Mat pool = b_perp(space, chosen);
      if (pool.rows() == 0) break;
      // random singular vector from the perp
      F2Vec v(n);
      for (int i = 0; i < pool.rows(); ++i)
        if (rng.coin()) v.xor_with(pool.row(i));
      if (v.is_zero() || space.q(v)) { ++stuck; continue; }
      // close under the required maps; every image must stay compatible
      std::vector<F2Vec> orbit{v};
      bool orbit_ok = true;
      for (size_t i = 0; i < orbit.size() && orbit_ok; ++i) {
        for (const F2Mat& map : opts.must_commute_with) {
          F2Vec img = map.apply(orbit[i]);
          bool known = false;
          for (const F2Vec& o : orbit)
            if (o == img) { known = true; break; }
          if (!known) {
            if (orbit.size() >= 64) { orbit_ok = false; break; }
            orbit.push_back(img);
          }
        }
      }
      if (!orbit_ok) { ++stuck; continue; }
      F2Mat extended = chosen;
      for (const F2Vec& o : orbit) extended.append_row(o);
      if (!space.totally_singular(extended)) { ++stuck; continue; }
      int dim_ext = f2_rank(extended);
      if (dim_ext > target) { ++stuck; continue; }
      // direct sum with S must be maintained
      if (f2_rank(S.vstack(extended)) != target + dim_ext) { ++stuck; continue; }
      if (dim_ext <= f2_rank(chosen)) { ++stuck; continue; }
      chosen = f2_row_space(extended);
      stuck = 0;
    }
    if (chosen.rows() == target) {
      // final verification
      if (!space.totally_singular(chosen)) continue;
      if (f2_intersection_dim(S, chosen) != 0) continue;
      if (f2_rank(S.vstack(chosen)) != n) continue;
      bool invariant = true;
      for (const F2Mat& map : opts.must_commute_with) {
        F2Mat image = chosen * map;
        if (f2_rank(chosen.vstack(image)) != chosen.rows()) { invariant = false; break; }
      }
      if (!invariant) continue;
      return chosen;
    }
  }
  return std::nullopt;
}

Lattice lift(const Lattice& u, const F2Mat& S) {
  if (S.cols() != u.rank()) throw Error("lift: subspace width must match rank");
  Lattice doubled(u.ambient_gram(), u.basis().scaled(Rat(2)));
  if (S.rows() == 0) return canonicalized(doubled);
  RatMat lifts(S.rows(), u.ambient_dim());
  for (int i = 0; i < S.rows(); ++i) {
    RatVec acc(u.ambient_dim(), Rat(0));
    for (int j = 0; j < u.rank(); ++j)
      if (S.get(i, j)) acc = add(acc, u.basis().row(j));
    lifts.set_row(i, acc);
  }
  Lattice lifted(u.ambient_gram(), std::move(lifts));
  Lattice x = canonicalized(sum(lifted, doubled));
  Int expected = Int(1) << (u.rank() - S.rows());
  if (index(u, x) != expected) throw Error("lift: wrong index");
  return x;
}

Lattice upsilon_scale(const Lattice& parent) {
  return scale_norms(parent, rat(1, 2)).with_label(parent.label().empty() ? "upsilon"
                                                                          : parent.label() + "/sqrt2");
}

Lattice half_x(const PolarizationPair& p) {
  return scale_norms(p.X, rat(1, 2)).with_label("M");
}

Lattice half_y(const PolarizationPair& p) {
  return scale_norms(p.Y, rat(1, 2)).with_label("N");
}

namespace {

bool gram_all_even(const Lattice& l) {
  RatMat g = gram(l);
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j)
      if (!is_even_integer(g.at(i, j))) return false;
  return true;
}

}  // namespace

PolarizationCheck verify_polarization(const PolarizationPair& p) {
  PolarizationCheck c;
  auto fail = [&](const std::string& what) { c.failures.push_back(what); };
  // every clause reports on its own; degenerate input (wrong rank, not a
  // sublattice) marks a clause failed instead of aborting the report
  auto guarded = [&](bool& flag, const std::string& what, auto&& check) {
    try {
      flag = check();
    } catch (const Error& e) {
      flag = false;
    }
    if (!flag) fail(what);
  };

  LatticeReport mx, my;
  guarded(c.parent_even_unimodular, "parent is not even unimodular", [&] {
    LatticeReport r = classify(p.parent);
    return r.is_even && r.is_unimodular;
  });
  guarded(c.x_doubled, "(X,X) is not contained in 2Z", [&] { return gram_all_even(p.X); });
  guarded(c.y_doubled, "(Y,Y) is not contained in 2Z", [&] { return gram_all_even(p.Y); });
  guarded(c.sum_ok, "X + Y != parent",
          [&] { return equal_lattices(sum(p.X, p.Y), p.parent); });
  guarded(c.intersection_ok, "X cap Y != 2 * parent", [&] {
    Lattice doubled(p.parent.ambient_gram(), p.parent.basis().scaled(Rat(2)));
    return equal_lattices(intersect(p.X, p.Y), doubled);
  });
  guarded(c.halves_unimodular, "halves are not integral unimodular", [&] {
    mx = classify(half_x(p));
    my = classify(half_y(p));
    return mx.is_integral && mx.is_unimodular && my.is_integral && my.is_unimodular;
  });
  guarded(c.indices_ok, "|U:X| or |U:Y| is not 2^(n/2)", [&] {
    Int expected = Int(1) << (p.parent.rank() / 2);
    return index(p.parent, p.X) == expected && index(p.parent, p.Y) == expected &&
           check_index_det(p.parent, p.X) && check_index_det(p.parent, p.Y);
  });

  c.even_pair = mx.is_even && my.is_even;
  if (p.even_polarization != c.even_pair) fail("even_polarization flag disagrees with halves");

  c.ok = c.parent_even_unimodular && c.x_doubled && c.y_doubled && c.sum_ok &&
         c.intersection_ok && c.halves_unimodular && c.indices_ok &&
         p.even_polarization == c.even_pair;
  return c;
}

namespace {

// coordinates of the sublattice x inside u, reduced mod 2
F2Mat image_mod2(const Lattice& u, const Lattice& x) {
  RatMat t = u.basis().transpose();
  IntMat coords(x.rank(), u.rank());
  for (int i = 0; i < x.rank(); ++i) {
    SolveResult s = solve(t, x.basis().row(i));
    if (s.status != SolveStatus::ok) throw Error("image_mod2: not a sublattice");
    for (int j = 0; j < u.rank(); ++j) {
      if (!is_integer(s.x[j])) throw Error("image_mod2: non-integer coordinates");
      coords.at(i, j) = s.x[j].get_num();
    }
  }
  return f2_row_space(int_to_f2(coords));
}

}  // namespace

PolarizationPair polarize_by_fourvolution(const Lattice& u, const Fourvolution& f,
                                          const ComplementOpts& opts) {
  Lattice x = fourvolution_sublattice(u, f);
  F2QuadraticSpace space = mod2_space(u);
  F2Mat S = image_mod2(u, x);
  if (S.rows() != u.rank() / 2 || !space.totally_singular(S))
    throw Error("fourvolution image is not maximal totally singular");
  auto complement = totally_singular_complement(space, S, opts);
  if (!complement) throw Error("complement search failed within budget");
  Lattice y = lift(u, *complement);

  PolarizationPair pair;
  pair.parent = u;
  pair.X = x.with_label(u.label() + ".X");
  pair.Y = y.with_label(u.label() + ".Y");
  pair.even_polarization = classify(half_x(pair)).is_even && classify(half_y(pair)).is_even;
  PolarizationCheck check = verify_polarization(pair);
  if (!check.ok) {
    std::string what = "polarization verification failed:";
    for (const auto& s : check.failures) what += " " + s;
    throw Error(what);
  }
  return pair;
}

namespace {

struct ClassGoodness {
  // key: packed class bits in the parent basis (rank <= 64)
  std::map<std::vector<uint64_t>, bool> memo;
  const Lattice* two_u = nullptr;
  const Lattice* u = nullptr;
  int checks = 0;

  // a class is good when its coset holds no vector of norm < 8, i.e. the
  // lifted half stays rootless through it
  bool good(const F2Vec& cls) {
    std::vector<uint64_t> key;
    for (int i = 0; i < cls.size(); ++i)
      if (cls.get(i)) {
        if (key.empty()) key.assign((cls.size() + 63) / 64, 0);
        key[i >> 6] |= uint64_t(1) << (i & 63);
      }
    if (key.empty()) return false;  // the zero class is never used
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    RatVec v(u->ambient_dim(), Rat(0));
    for (int i = 0; i < cls.size(); ++i)
      if (cls.get(i)) v = add(v, u->basis().row(i));
    EnumOptions opts;
    opts.stop_after_first = true;
    ++checks;
    EnumerationReport rep = enumerate_coset(*two_u, v, Rat(6), opts);
    bool ok = rep.counts_by_norm.empty();
    memo.emplace(std::move(key), ok);
    return ok;
  }
};

}  // namespace

std::optional<PolarizationPair> search_rootless_half(const Lattice& u, const Lattice& X,
                                                     int budget, uint64_t seed,
                                                     RootlessSearchStats* stats,
                                                     const std::vector<RatMat>& isometry_pool) {
  RootlessSearchStats local;
  local.seed = seed;
  local.budget = budget;
  RootlessSearchStats& st = stats ? *stats : local;
  st.seed = seed;
  st.budget = budget;

  F2QuadraticSpace space = mod2_space(u);
  F2Mat S = image_mod2(u, X);
  int n = u.rank();
  if (S.rows() != n / 2 || !space.totally_singular(S))
    throw Error("search_rootless_half: X/2U is not maximal totally singular");

  {
    EnumOptions ropt;
    Lattice mx = scale_norms(X, rat(1, 2));
    EnumerationReport roots = enumerate_short(mx, Rat(2), ropt);
    if (!roots.exhaustive || !roots.counts_by_norm.empty())
      throw Error("search_rootless_half: the given half is not rootless");
  }

  auto finish = [&](const Lattice& y) -> std::optional<PolarizationPair> {
    PolarizationPair pair;
    pair.parent = u;
    pair.X = X.with_label(u.label() + ".X");
    pair.Y = y.with_label(u.label() + ".Y");
    pair.even_polarization =
        classify(half_x(pair)).is_even && classify(half_y(pair)).is_even;
    PolarizationCheck check = verify_polarization(pair);
    if (!check.ok) return std::nullopt;
    EnumOptions ropt;
    EnumerationReport roots = enumerate_short(half_y(pair), Rat(2), ropt);
    if (!roots.exhaustive || !roots.counts_by_norm.empty()) return std::nullopt;
    ++st.verified_pairs;
    return pair;
  };

  // Phase A: candidates from the supplied isometries. A fourvolution g
  // gives the rootless half (g-1)U; any isometry h gives the image h(X),
  // rootless because X is. Either works when the mod-2 images are
  // transverse to X's.
  for (const RatMat& g : isometry_pool) {
    if (st.fourvolutions_tried >= budget) break;
    ++st.fourvolutions_tried;
    std::vector<Lattice> candidates;
    if (is_valid_fourvolution(u, g)) {
      Fourvolution fv{"pool", u, g};
      candidates.push_back(fourvolution_sublattice(u, fv));
    }
    if (is_isometry_of(u, g)) candidates.push_back(canonicalized(transformed(X, g)));
    for (const Lattice& y : candidates) {
      F2Mat Sg = image_mod2(u, y);
      if (f2_intersection_dim(S, Sg) != 0) continue;
      auto pair = finish(y);
      if (pair) return pair;
    }
  }

  // Phase B: guided depth-first growth of the complement. A partial span
  // survives only while every nonzero class has coset minimum >= 8, which
  // forces the lifted half rootless by construction.
  ClassGoodness oracle;
  Lattice two_u(u.ambient_gram(), u.basis().scaled(Rat(2)));
  Lattice two_u_red = lll(two_u);
  oracle.two_u = &two_u_red;
  oracle.u = &u;

  Prng rng(seed);
  int target = n / 2;
  while (oracle.checks < budget) {
    F2Mat chosen(0, n);
    std::vector<F2Vec> span_classes;  // nonzero elements of span(chosen)
    int dead_ends = 0;
    while (chosen.rows() < target && oracle.checks < budget && dead_ends < 200) {
      F2Mat pool = b_perp(space, chosen);
      F2Vec v(n);
      for (int i = 0; i < pool.rows(); ++i)
        if (rng.coin()) v.xor_with(pool.row(i));
      if (v.is_zero() || space.q(v)) { ++dead_ends; continue; }
      if (f2_rank(S.vstack(chosen).vstack([&] {
            F2Mat one(1, n);
            one.row(0) = v;
            return one;
          }())) != target + chosen.rows() + 1) {
        ++dead_ends;
        continue;
      }
      // every new class v + old span must be good
      bool ok = oracle.good(v);
      if (ok)
        for (const F2Vec& c : span_classes) {
          F2Vec w = v;
          w.xor_with(c);
          if (!oracle.good(w)) { ok = false; break; }
        }
      if (!ok) { ++dead_ends; continue; }
      // accept
      std::vector<F2Vec> grown = span_classes;
      grown.push_back(v);
      for (const F2Vec& c : span_classes) {
        F2Vec w = v;
        w.xor_with(c);
        grown.push_back(w);
      }
      span_classes = std::move(grown);
      chosen.append_row(v);
      dead_ends = 0;
    }
    ++st.complements_tried;
    if (chosen.rows() == target) {
      auto pair = finish(lift(u, chosen));
      if (pair) return pair;
    }
    if (oracle.checks >= budget) break;
  }
  return std::nullopt;
}

namespace {

std::mutex pair_mutex;
std::map<std::string, PolarizationPair> pair_cache;

}  // namespace

PolarizationPair standard_pair(const std::string& name) {
  {
    std::lock_guard<std::mutex> lock(pair_mutex);
    auto it = pair_cache.find(name);
    if (it != pair_cache.end()) return it->second;
  }
  PolarizationPair pair;
  if (name == "E8") {
    ComplementOpts opts;
    opts.seed = 0x5eed0001;
    opts.tries = 500;
    Fourvolution j = builtin_fourvolution("J_E8");
    // The complement is chosen invariant under the companion fourvolution
    // Phi_E8 (it cannot be J-invariant: X/2U is exactly the mod-2 fixed
    // space of J). Phi preserves X too, so diag(Phi,...,Phi) acts on every
    // L(M,N,k) built from this pair; that is what F_Leech and F_BW32 are.
    Fourvolution phi = builtin_fourvolution("Phi_E8");
    if (!equal_lattices(transformed(fourvolution_sublattice(j.parent, j), phi.matrix),
                        fourvolution_sublattice(j.parent, j)))
      throw Error("companion does not preserve (J-1)E8");
    opts.must_commute_with.push_back(int_to_f2(isometry_on_basis(phi.parent, phi.matrix)));
    pair = polarize_by_fourvolution(j.parent, j, opts);
    if (!pair.even_polarization) throw Error("E8 polarization came out odd");
    if (!equal_lattices(transformed(pair.X, phi.matrix), pair.X) ||
        !equal_lattices(transformed(pair.Y, phi.matrix), pair.Y))
      throw Error("E8 polarization is not Phi-stable");
  } else if (name == "E8_cubed") {
    PolarizationPair e = standard_pair("E8");
    PolarizationPair out;
    out.parent = make_standard("E8_cubed");
    out.X = direct_sum(direct_sum(e.X, e.X), e.X).with_label("E8^3.X");
    out.Y = direct_sum(direct_sum(e.Y, e.Y), e.Y).with_label("E8^3.Y");
    out.even_polarization = e.even_polarization;
    PolarizationCheck check = verify_polarization(out);
    if (!check.ok) throw Error("E8^3 polarization failed verification");
    pair = out;
  } else if (name == "Leech") {
    ComplementOpts opts;
    opts.seed = 0x5eed0003;
    opts.tries = 500;
    Fourvolution f = builtin_fourvolution("F_Leech");
    pair = polarize_by_fourvolution(f.parent, f, opts);
  } else if (name == "Leech_Leech") {
    Fourvolution f = builtin_fourvolution("F_Leech");
    Lattice x = fourvolution_sublattice(f.parent, f);
    RootlessSearchStats stats;
    auto found = search_rootless_half(f.parent, x, 4000, 0x5eedbeef, &stats,
                                      known_isometries("Leech_turyn"));
    if (!found)
      throw Error("Leech-Leech polarization search exhausted its budget (" +
                  std::to_string(stats.fourvolutions_tried) + " pool candidates, " +
                  std::to_string(stats.complements_tried) + " complements)");
    pair = *found;
  } else if (name == "BW32") {
    ComplementOpts opts;
    opts.seed = 0x5eed0004;
    opts.tries = 500;
    Fourvolution f = builtin_fourvolution("F_BW32");
    pair = polarize_by_fourvolution(f.parent, f, opts);
  } else {
    throw Error("no standard polarization named '" + name + "'");
  }
  std::lock_guard<std::mutex> lock(pair_mutex);
  return pair_cache.emplace(name, std::move(pair)).first->second;
}

}  // namespace latpol
