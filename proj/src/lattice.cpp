#include "latpol/lattice.hpp"

namespace latpol {

Lattice::Lattice(RatMat ambient_gram, RatMat basis, std::string label)
    : label_(std::move(label)), ambient_gram_(std::move(ambient_gram)), basis_(std::move(basis)) {
  if (ambient_gram_.rows() != ambient_gram_.cols())
    throw Error("ambient Gram must be square");
  if (!ambient_gram_.is_symmetric()) throw Error("ambient Gram must be symmetric");
  if (basis_.cols() != ambient_gram_.rows())
    throw Error("basis width must match ambient dimension");
  if (basis_.rows() > basis_.cols()) throw Error("more basis rows than ambient dimension");
  if (latpol::rank(basis_) != basis_.rows()) throw Error("basis rows must be independent");
}

RatMat gram(const Lattice& l) {
  return l.basis() * l.ambient_gram() * l.basis().transpose();
}

Lattice scale_norms(const Lattice& l, const Rat& r) {
  if (r <= 0) throw Error("scale_norms: factor must be positive");
  return Lattice(l.ambient_gram().scaled(r), l.basis(), l.label());
}

Lattice canonicalized(const Lattice& l) {
  Int d = denominator_lcm(l.basis());
  IntMat scaled = scaled_to_int(l.basis(), d);
  HnfResult h = hnf(scaled);
  if (h.rank != l.rank()) throw Error("canonicalized: basis lost rank");
  RatMat b(h.rank, l.ambient_dim());
  Rat inv = rat(Int(1), d);
  for (int i = 0; i < h.rank; ++i)
    for (int j = 0; j < l.ambient_dim(); ++j) b.at(i, j) = Rat(h.h.at(i, j)) * inv;
  return Lattice(l.ambient_gram(), std::move(b), l.label());
}

bool same_ambient(const Lattice& a, const Lattice& b) {
  return a.ambient_gram() == b.ambient_gram();
}

bool equal_lattices(const Lattice& a, const Lattice& b) {
  if (!same_ambient(a, b) || a.rank() != b.rank()) return false;
  return canonicalized(a).basis() == canonicalized(b).basis();
}

Lattice sum(const Lattice& a, const Lattice& b) {
  if (!same_ambient(a, b)) throw Error("sum: ambient mismatch");
  RatMat stacked = a.basis().vstack(b.basis());
  Int d = denominator_lcm(stacked);
  HnfResult h = hnf(scaled_to_int(stacked, d));
  RatMat basis(h.rank, a.ambient_dim());
  Rat inv = rat(Int(1), d);
  for (int i = 0; i < h.rank; ++i)
    for (int j = 0; j < a.ambient_dim(); ++j) basis.at(i, j) = Rat(h.h.at(i, j)) * inv;
  return Lattice(a.ambient_gram(), std::move(basis));
}

Lattice intersect(const Lattice& a, const Lattice& b) {
  if (!same_ambient(a, b)) throw Error("intersect: ambient mismatch");
  // Integer kernel of the stacked bases: (x, y) with x*A = y*B gives the
  // intersection as { x*A }. The kernel from HNF is saturated, so this is
  // the full intersection, not a finite-index piece.
  RatMat stacked = a.basis().vstack(b.basis());
  Int d = denominator_lcm(stacked);
  IntMat sa = scaled_to_int(a.basis(), d);
  IntMat sb = scaled_to_int(b.basis(), d);
  IntMat signed_stack(sa.rows() + sb.rows(), sa.cols());
  for (int i = 0; i < sa.rows(); ++i)
    for (int j = 0; j < sa.cols(); ++j) signed_stack.at(i, j) = sa.at(i, j);
  for (int i = 0; i < sb.rows(); ++i)
    for (int j = 0; j < sb.cols(); ++j) signed_stack.at(sa.rows() + i, j) = -sb.at(i, j);
  IntMat K = left_kernel(signed_stack);
  // rows: (x | y) with x*sa = y*sb
  RatMat gens(K.rows(), a.ambient_dim());
  for (int i = 0; i < K.rows(); ++i)
    for (int j = 0; j < a.ambient_dim(); ++j) {
      Rat s(0);
      for (int k = 0; k < sa.rows(); ++k)
        if (K.at(i, k) != 0) s += Rat(K.at(i, k)) * a.basis().at(k, j);
      gens.at(i, j) = s;
    }
  Int dg = denominator_lcm(gens);
  HnfResult h = hnf(scaled_to_int(gens, dg));
  RatMat basis(h.rank, a.ambient_dim());
  Rat inv = rat(Int(1), dg);
  for (int i = 0; i < h.rank; ++i)
    for (int j = 0; j < a.ambient_dim(); ++j) basis.at(i, j) = Rat(h.h.at(i, j)) * inv;
  return Lattice(a.ambient_gram(), std::move(basis));
}

namespace {

// Coordinates of every basis row of m in l's basis; throws unless m sits
// inside the Q-span of l.
RatMat coordinates_in(const Lattice& l, const Lattice& m) {
  RatMat t = l.basis().transpose();  // d x n
  RatMat coords(m.rank(), l.rank());
  for (int i = 0; i < m.rank(); ++i) {
    SolveResult s = solve(t, m.basis().row(i));
    if (s.status != SolveStatus::ok)
      throw Error("lattice is not inside the span of the claimed parent");
    for (int j = 0; j < l.rank(); ++j) coords.at(i, j) = s.x[j];
  }
  return coords;
}

}  // namespace

Int index(const Lattice& l, const Lattice& m) {
  if (!same_ambient(l, m)) throw Error("index: ambient mismatch");
  if (l.rank() != m.rank()) throw Error("index: rank mismatch");
  RatMat coords = coordinates_in(l, m);
  for (int i = 0; i < coords.rows(); ++i)
    for (int j = 0; j < coords.cols(); ++j)
      if (!is_integer(coords.at(i, j))) throw Error("index: not a sublattice");
  Rat d = det(coords);
  if (d == 0) throw Error("index: degenerate sublattice");
  Int n = d.get_num();
  return n < 0 ? Int(-n) : n;
}

bool check_index_det(const Lattice& l, const Lattice& m) {
  Rat dl = det(gram(l));
  Rat dm = det(gram(m));
  Int idx = index(l, m);
  return dl * Rat(idx * idx) == dm;
}

LatticeReport classify(const Lattice& l) {
  LatticeReport r;
  r.rank = l.rank();
  RatMat g = gram(l);
  r.det = det(g);
  r.is_integral = true;
  for (int i = 0; i < g.rows() && r.is_integral; ++i)
    for (int j = 0; j < g.cols(); ++j)
      if (!is_integer(g.at(i, j))) { r.is_integral = false; break; }
  r.is_even = r.is_integral;
  for (int i = 0; i < g.rows() && r.is_even; ++i)
    if (!is_even_integer(g.at(i, i))) r.is_even = false;
  r.is_unimodular = r.is_integral && r.det == 1;
  return r;
}

std::optional<RatVec> span_coordinates(const Lattice& l, const RatVec& v) {
  SolveResult s = solve(l.basis().transpose(), v);
  if (s.status != SolveStatus::ok) return std::nullopt;
  return s.x;
}

std::optional<IntVec> member(const Lattice& l, const RatVec& v) {
  auto coords = span_coordinates(l, v);
  if (!coords) return std::nullopt;
  IntVec out(coords->size());
  for (size_t i = 0; i < coords->size(); ++i) {
    if (!is_integer((*coords)[i])) return std::nullopt;
    out[i] = (*coords)[i].get_num();
  }
  return out;
}

Lattice dual(const Lattice& l) {
  RatMat g = gram(l);
  RatMat basis = inverse(g) * l.basis();
  return Lattice(l.ambient_gram(), std::move(basis), l.label().empty() ? "" : l.label() + "*");
}

bool contains(const Lattice& l, const Lattice& m) {
  if (!same_ambient(l, m)) return false;
  for (int i = 0; i < m.rank(); ++i)
    if (!member(l, m.basis().row(i))) return false;
  return true;
}

Lattice direct_sum(const Lattice& a, const Lattice& b) {
  int da = a.ambient_dim(), db = b.ambient_dim();
  RatMat g(da + db, da + db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j) g.at(i, j) = a.ambient_gram().at(i, j);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j) g.at(da + i, da + j) = b.ambient_gram().at(i, j);
  RatMat basis(a.rank() + b.rank(), da + db);
  for (int i = 0; i < a.rank(); ++i)
    for (int j = 0; j < da; ++j) basis.at(i, j) = a.basis().at(i, j);
  for (int i = 0; i < b.rank(); ++i)
    for (int j = 0; j < db; ++j) basis.at(a.rank() + i, da + j) = b.basis().at(i, j);
  return Lattice(std::move(g), std::move(basis));
}

RatVec from_coordinates(const Lattice& l, const IntVec& coords) {
  if (int(coords.size()) != l.rank()) throw Error("from_coordinates: length mismatch");
  RatVec v(l.ambient_dim(), Rat(0));
  for (int i = 0; i < l.rank(); ++i) {
    if (coords[i] == 0) continue;
    for (int j = 0; j < l.ambient_dim(); ++j)
      v[j] += Rat(coords[i]) * l.basis().at(i, j);
  }
  return v;
}

}  // namespace latpol
