#pragma once

#include "latpol/enumerate.hpp"
#include "latpol/polarization.hpp"

namespace latpol {

// The construction operates at Upsilon scale: M, N are the integral
// unimodular halves of a polarization of Upsilon = (1/sqrt 2)U, and
// L(M,N,k) lives in Upsilon^k.
struct LmnSpec {
  PolarizationPair pair;
  int k = 3;
  std::string label;
};

// A minimum-norm value plus how it was established; asserted inputs taint
// every bound derived from them.
struct MuValue {
  Rat value;
  bool certified = false;
};

struct MuInputs {
  MuValue mu_M, mu_N, mu_U;
};

struct MuBounds {
  Rat mu_M, mu_N, mu_U;
  Rat mu_MU;          // min(mu_M, mu_U)
  Rat lower;          // min(k/2 * mu_U, 2 * mu_MU)
  Rat upper;          // min(k * mu_N, 2 * mu_MU)
  Rat lower_effective;  // lower rounded up to the next even integer when L is even
  bool l_is_even = false;
  bool tainted = false;  // some mu input was asserted, not certified
};

struct LmnWitness {
  std::string kind;  // "diagonal", "difference", "intersection"
  RatVec vector;     // ambient coordinates in Upsilon^k
  Rat norm;
};

struct LmnResult {
  LmnSpec spec;
  Lattice L;
  Lattice L_M;
  Lattice L_N_diag;
  LatticeReport report;
  MuBounds bounds;
  std::vector<LmnWitness> witnesses;
};

// { (x_1..x_k) in M^k : sum x_i in M cap N }.
Lattice build_LM(const LmnSpec& spec);

// The diagonal copy { (y,..,y) : y in N }.
Lattice build_LN_diagonal(const LmnSpec& spec);

// L = L_M + L^N with every structural claim checked: L_M even, L integral,
// unimodular, even iff (k even or N even), |L : L_M| = 2^(rank(M)/2).
LmnResult build_L(const LmnSpec& spec, const MuInputs& mus);

MuBounds mu_bounds(const LmnSpec& spec, const MuInputs& mus);

// Explicit short vectors: (y,...,y) for minimal y in N; (x,-x,0,...) for
// minimal x in M; (d,0,...) for minimal d in M cap N. Each verified by
// membership and exact norm.
std::vector<LmnWitness> upper_witness(const LmnSpec& spec, const LmnResult& result);

enum class Rank72Verdict { norm4, norm6, pending_6_or_8, unknown };

std::string to_string(Rank72Verdict v);

// Case analysis for rank-72 L(M,N,3) over Niemeier halves: rooted M gives 4,
// rootless M with rooted N gives 6, both rootless routes to the offender
// search. Needs certified rootlessness data for M, N and the parent.
Rank72Verdict rank72_verdict(const LmnSpec& spec, const EnumOptions& opts = {});

// Wired-up inputs for the named constructions; each builds (or reuses) the
// required polarization with pinned seeds.
LmnSpec preset(const std::string& name);

// Certified mu for the standard inputs of the presets, with the evenness
// shortcut: an even lattice with no vectors below 2m and one of norm 2m has
// mu = 2m.
MuValue certified_even_min_norm(const Lattice& l, const Rat& expected,
                                const EnumOptions& opts = {});

}  // namespace latpol
