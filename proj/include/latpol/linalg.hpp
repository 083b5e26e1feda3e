#pragma once

#include <optional>

#include "latpol/matrix.hpp"

namespace latpol {

// Row Hermite normal form. h = u * m with u unimodular; the first `rank`
// rows of h are the echelon basis (positive pivots, entries above each
// pivot reduced into [0, pivot)), zero rows trail.
struct HnfResult {
  IntMat h;
  IntMat u;
  int rank = 0;
};

HnfResult hnf(const IntMat& m);

// Basis of { z : z * m = 0 } as rows; saturated (a Z-basis, not just a
// finite-index subgroup).
IntMat left_kernel(const IntMat& m);

// Exact determinant by fraction-free (Bareiss) elimination.
Int det(const IntMat& m);
Rat det(const RatMat& m);

enum class SolveStatus { ok, inconsistent, rank_deficient };

struct SolveResult {
  SolveStatus status = SolveStatus::inconsistent;
  RatVec x;  // valid when status == ok
};

// Solves a * x = b exactly (column-vector convention). rank_deficient is
// reported separately from inconsistency so callers can distinguish a bad
// matrix from an unreachable target.
SolveResult solve(const RatMat& a, const RatVec& b);

// Solves x * a = b; the convention used for coordinates of row vectors.
SolveResult solve_left(const RatMat& a, const RatVec& b);

RatMat inverse(const RatMat& m);  // throws on singular input

int rank(const IntMat& m);
int rank(const RatMat& m);

}  // namespace latpol
