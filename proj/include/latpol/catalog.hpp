#pragma once

#include "latpol/lattice.hpp"

namespace latpol {

// An orthogonal map f with f^2 = -1 acting on ambient coordinates (row
// convention, v -> v * matrix). (f-1) doubles every inner product, so
// L(f-1) is a sqrt(2)-scaled copy of L sitting inside L.
struct Fourvolution {
  std::string name;
  Lattice parent;
  RatMat matrix;  // ambient coordinate action
};

// Standard lattices: "Zn" / "Dn" with a numeric suffix (e.g. "Z8", "D12"),
// "E8", "E8_cubed", "BW32", "Leech_turyn". Every constructor verifies its
// documented invariants before returning.
Lattice make_standard(const std::string& name);

// "J_E8", "J_E8_cubed", "F_BW32", "F_Leech"; each is validated against its
// parent on construction.
Fourvolution builtin_fourvolution(const std::string& name);

// Image lattice l(f-1), HNF-canonicalized, with the doubling and index
// invariants checked.
Lattice fourvolution_sublattice(const Lattice& l, const Fourvolution& f);

// Apply an ambient coordinate map to a lattice (basis rows * matrix).
Lattice transformed(const Lattice& l, const RatMat& map);

// True if the map is a Gram isometry with square -1 mapping l onto itself.
bool is_valid_fourvolution(const Lattice& l, const RatMat& map);

// True if the map preserves the ambient Gram and maps l onto itself.
bool is_isometry_of(const Lattice& l, const RatMat& map);

// Coordinate action of an ambient isometry on l's basis; integer with
// determinant +-1 when the map preserves l.
IntMat isometry_on_basis(const Lattice& l, const RatMat& map);

// Verified self-isometries of the named lattice, usable as search pools
// (block permutations and plane rotations for the Turyn-built Leech).
std::vector<RatMat> known_isometries(const std::string& name);

}  // namespace latpol
