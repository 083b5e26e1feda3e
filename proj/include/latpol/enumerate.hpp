#pragma once

#include <map>

#include "latpol/lattice.hpp"

namespace latpol {

struct EnumerationReport {
  Rat bound;
  std::map<Rat, unsigned long long> counts_by_norm;
  std::vector<RatVec> witnesses;  // ambient vectors, filled when collecting
  bool exhaustive = false;
  unsigned long long nodes = 0;
  double wall_ms = 0.0;  // diagnostics only; never serialized
};

struct EnumOptions {
  bool collect = false;
  unsigned long long node_budget = 1'000'000'000ULL;
  int rank_cap = 32;        // exhaustive-mode policy cap
  bool force_rank = false;  // override the cap explicitly
  int threads = 1;          // work units split by top-level coordinate
  // Return as soon as one vector passes the exact check; the report is then
  // marked non-exhaustive and holds at least that vector.
  bool stop_after_first = false;
};

class PolicyRefusal : public Error {
public:
  explicit PolicyRefusal(const std::string& what) : Error(what) {}
};

// Exact-rational LLL on the Gram matrix; returns the same lattice with a
// reduced basis (verified unimodular transform).
Lattice lll(const Lattice& l, const Rat& delta = Rat(3) / 4);

// All nonzero v with (v,v) <= bound. Floating-point pruning with a safety
// margin; every accepted vector is re-verified exactly. +-v counted as two.
EnumerationReport enumerate_short(const Lattice& l, const Rat& bound,
                                  const EnumOptions& opts = {});

// All v in t + l with (v,v) <= bound (norm-0 vector included when t is in l).
EnumerationReport enumerate_coset(const Lattice& l, const RatVec& t, const Rat& bound,
                                  const EnumOptions& opts = {});

struct MinNormResult {
  Rat mu;
  RatVec witness;
  bool certified = false;
};

// Certified minimum norm when the rank policy allows exhaustive
// enumeration; otherwise the best upper witness with certified=false.
MinNormResult min_norm(const Lattice& l, const EnumOptions& opts = {});

struct RootSystemId {
  struct Component {
    char type = '?';  // 'A', 'D', 'E'
    int rank = 0;
    unsigned long long root_count = 0;
  };
  std::vector<Component> components;
  unsigned long long total_roots = 0;
  bool ambiguous = false;  // a component failed ADE typing
};

// Connected components of the norm-2 vectors, typed by (rank, count).
RootSystemId identify_root_system(const Lattice& l, const EnumOptions& opts = {});

}  // namespace latpol
