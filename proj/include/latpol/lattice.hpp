#pragma once

#include <optional>
#include <string>

#include "latpol/linalg.hpp"

namespace latpol {

// A lattice is a full-row-rank rational basis (rows) inside an ambient
// rational quadratic space given by a symmetric positive definite Gram
// matrix. Scalings like sqrt(2)L are represented by scaling the ambient
// Gram, never by irrational coordinates.
class Lattice {
public:
  Lattice() = default;
  Lattice(RatMat ambient_gram, RatMat basis, std::string label = "");

  const RatMat& ambient_gram() const { return ambient_gram_; }
  const RatMat& basis() const { return basis_; }
  const std::string& label() const { return label_; }
  int rank() const { return basis_.rows(); }
  int ambient_dim() const { return ambient_gram_.rows(); }

  Lattice with_label(std::string label) const {
    Lattice l = *this;
    l.label_ = std::move(label);
    return l;
  }

private:
  std::string label_;
  RatMat ambient_gram_;
  RatMat basis_;
};

struct LatticeReport {
  int rank = 0;
  Rat det;
  bool is_integral = false;
  bool is_even = false;
  bool is_unimodular = false;
};

// Gram matrix basis * ambient_gram * basis^T.
RatMat gram(const Lattice& l);

// Gram scaled by exactly r > 0; models sqrt(r)L.
Lattice scale_norms(const Lattice& l, const Rat& r);

// Unique HNF-canonical basis of the same lattice; used for equality.
Lattice canonicalized(const Lattice& l);

bool same_ambient(const Lattice& a, const Lattice& b);
bool equal_lattices(const Lattice& a, const Lattice& b);

Lattice sum(const Lattice& a, const Lattice& b);
Lattice intersect(const Lattice& a, const Lattice& b);

// |l : m| for a finite-index sublattice m of l (equal rank). Throws if m is
// not contained in l.
Int index(const Lattice& l, const Lattice& m);

// det(L) * |L:M|^2 == det(M), exactly (the index-determinant identity). A
// false return means an internal inconsistency, not a property of the input.
bool check_index_det(const Lattice& l, const Lattice& m);

LatticeReport classify(const Lattice& l);

// Integer coordinates of v in l's basis if v is a lattice member.
std::optional<IntVec> member(const Lattice& l, const RatVec& v);

// Rational coordinates of v in the Q-span of l, if v lies in the span.
std::optional<RatVec> span_coordinates(const Lattice& l, const RatVec& v);

// Dual lattice in the same ambient space: Gram(dual) = Gram(l)^{-1}.
Lattice dual(const Lattice& l);

// True if m is a sublattice of l (every basis row of m is a member of l).
bool contains(const Lattice& l, const Lattice& m);

// Orthogonal direct sum; ambient grams and coordinates are concatenated
// block-diagonally.
Lattice direct_sum(const Lattice& a, const Lattice& b);

// Ambient vector from basis coordinates.
RatVec from_coordinates(const Lattice& l, const IntVec& coords);

}  // namespace latpol
