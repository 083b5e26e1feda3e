#pragma once

#include <optional>

#include "latpol/catalog.hpp"
#include "latpol/f2.hpp"
#include "latpol/prng.hpp"

namespace latpol {

// The mod-2 quadratic space U/2U of an even unimodular lattice: bilinear
// form = Gram mod 2 (alternating, nonsingular), q(u) = (u,u)/2 mod 2.
struct F2QuadraticSpace {
  int dim = 0;
  F2Mat bilinear;
  F2Vec q_basis;  // q on the basis vectors

  bool q(const F2Vec& v) const;
  bool b(const F2Vec& v, const F2Vec& w) const;
  bool totally_singular(const F2Mat& subspace) const;
  bool totally_isotropic(const F2Mat& subspace) const;
};

F2QuadraticSpace mod2_space(const Lattice& u);

// Dimension of a maximal totally singular subspace.
int witt_index(const F2QuadraticSpace& space);

struct ComplementOpts {
  uint64_t seed = 0;
  int tries = 200;
  // When set, the returned subspace is invariant under each of these maps
  // (images of lattice isometries on U/2U).
  std::vector<F2Mat> must_commute_with;
};

// A totally singular S' with S + S' = everything and S cap S' = 0, found by
// seeded greedy extension; nullopt when the budget runs out.
std::optional<F2Mat> totally_singular_complement(const F2QuadraticSpace& space,
                                                 const F2Mat& S, const ComplementOpts& opts);

// The sublattice X with 2U <= X <= U and X/2U = S.
Lattice lift(const Lattice& u, const F2Mat& S);

// X, Y <= U with doubled inner products, X+Y = U, X cap Y = 2U. The halves
// (1/sqrt 2)X, (1/sqrt 2)Y are integral unimodular; the pair is even when
// both halves are even.
struct PolarizationPair {
  Lattice parent;
  Lattice X, Y;
  bool even_polarization = false;
};

// Upsilon-scale views: Gram(U)/2 ambient. half_x/half_y are the integral
// unimodular halves M, N; upsilon is the non-integral parent they polarize.
Lattice upsilon_scale(const Lattice& parent);
Lattice half_x(const PolarizationPair& p);
Lattice half_y(const PolarizationPair& p);

struct PolarizationCheck {
  bool ok = false;
  bool parent_even_unimodular = false;
  bool x_doubled = false;
  bool y_doubled = false;
  bool sum_ok = false;
  bool intersection_ok = false;
  bool halves_unimodular = false;
  bool indices_ok = false;
  bool even_pair = false;  // both halves even
  std::vector<std::string> failures;
};

PolarizationCheck verify_polarization(const PolarizationPair& p);

// X := (f-1)U, Y := lift of a totally singular complement of X/2U.
PolarizationPair polarize_by_fourvolution(const Lattice& u, const Fourvolution& f,
                                          const ComplementOpts& opts = {});

struct RootlessSearchStats {
  int complements_tried = 0;
  int fourvolutions_tried = 0;
  int verified_pairs = 0;
  uint64_t seed = 0;
  int budget = 0;
};

// Searches for a pair whose second half is also rootless (both halves then
// Leech by the rootless-Niemeier characterization). Extra isometries of u,
// when supplied, seed a pool of candidate fourvolutions g with N = (g-1)U;
// a guided complement search fills the remaining budget.
std::optional<PolarizationPair> search_rootless_half(
    const Lattice& u, const Lattice& X, int budget, uint64_t seed,
    RootlessSearchStats* stats = nullptr,
    const std::vector<RatMat>& isometry_pool = {});

// The pinned-seed polarizations the presets are wired to: "E8" (even,
// rotation-invariant complement), "E8_cubed" (orthogonal sum of three E8
// pairs), "Leech" and "BW32" (fourvolution halves). Cached per process.
PolarizationPair standard_pair(const std::string& name);

}  // namespace latpol
