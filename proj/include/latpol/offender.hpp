#pragma once

#include <functional>

#include "latpol/lmn.hpp"

namespace latpol {

// Search state for the norm-6 decision in rank-72 L(M,N,3): a 4-tuple
// (w,x,y,z) with w in N, x,y,z in M and x+y+z in M cap N is admissible; it
// is an offender when all of x+w, y+w, z+w have norm 2, which makes
// (x+w, y+w, z+w) a norm-6 vector of L.
struct AdmissibleTuple {
  RatVec w, x, y, z;  // Upsilon-ambient coordinates (one block)
};

// Everything the engine needs about one L(M,N,3) instance.
struct OffenderContext {
  Lattice L;            // rank 3n in Upsilon^3
  Lattice M, N;         // halves, Upsilon scale
  Lattice upsilon;      // M + N
  Lattice two_upsilon;  // M cap N
  // strict: the instance satisfies the theorems' hypotheses (both halves
  // rootless Leech-normed); structural lemma failures then indicate bugs
  // and are reported as violations. In model instances (e.g. the E8-based
  // rank-24 one) the same checks run but only classify candidates.
  bool strict = true;
};

OffenderContext make_offender_context(const LmnResult& r, bool strict);

bool is_admissible(const OffenderContext& c, const AdmissibleTuple& t);

// The L-vector (x+w, y+w, z+w).
RatVec tuple_vector(const OffenderContext& c, const AdmissibleTuple& t);

// All three components have norm exactly 2.
bool is_offender(const OffenderContext& c, const AdmissibleTuple& t);

// Equivalent tuple (same L-vector) whose w has norm 4, found through the
// norm-4 frame of w's coset mod 2*Upsilon.
AdmissibleTuple normalize_w(const OffenderContext& c, const AdmissibleTuple& t);

struct SpanReport {
  bool integral = false;
  bool even = false;
  bool image_order_2 = false;
  int span_rank = 0;
  bool ok() const { return integral && even && image_order_2; }
};

// Lemma-level facts about span{w,x,y,z} for an offender candidate.
SpanReport span_checks(const OffenderContext& c, const AdmissibleTuple& t);

// All r in w + M with (r,r) = 2; the offender-root candidates through w.
std::vector<RatVec> roots_for(const OffenderContext& c, const RatVec& w);

// Super offenders assembled from a root list: triples with pairwise inner
// product 0 and root sum congruent to w mod 2*Upsilon, normalized so that
// (w,t) = 1 and |z|^2 = 4. Structural facts (pairwise orthogonality,
// (w,.) pattern {0,0,+-1}, |x|,|y|,|z| pattern, even integral span) are
// checked on every surviving candidate; in strict mode a failure is
// recorded through `violations`.
std::vector<AdmissibleTuple> triples_for(const OffenderContext& c, const RatVec& w,
                                         const std::vector<RatVec>& roots,
                                         std::vector<std::string>* violations,
                                         size_t limit = SIZE_MAX);

struct OffenderCoverage {
  unsigned long long w_classes_tested = 0;
  unsigned long long total_w_classes = 0;
  std::string mode;
  uint64_t seed = 0;
};

struct OffenderVerdict {
  enum class Status { norm6_found, none_found, pending };
  Status status = Status::pending;
  std::optional<RatVec> witness;  // verified norm-6 vector of L
  OffenderCoverage coverage;
  std::vector<std::string> lemma_violations;
};

std::string to_string(OffenderVerdict::Status s);

struct SearchMode {
  bool exhaustive = false;
  unsigned long long sample_count = 0;  // sampled mode
  uint64_t seed = 0;
  std::string checkpoint_path;  // exhaustive mode; resumable append-only log
  // default: the first verified super offender ends the run. Audit runs can
  // keep scanning; the verdict then reflects every class visited.
  bool stop_at_first_witness = true;
};

// Iterates norm-4 w-classes of N mod 2*Upsilon (one representative per
// class covers every L-vector with that class). First verified offender
// short-circuits with its norm-6 witness.
OffenderVerdict offender_search(const OffenderContext& c, const SearchMode& mode,
                                const std::function<void(const std::string&)>& progress = {});

// Class bookkeeping, exposed for tests and the checkpoint tooling.
struct WClassIndex {
  IntMat reps_in_N_coords;  // mixed-radix representative coordinates
  std::vector<Int> moduli;  // diagonal of the HNF of 2*Upsilon inside N
  unsigned long long total = 0;  // number of nontrivial classes
  RatVec representative(const Lattice& N, unsigned long long id) const;
};

WClassIndex w_class_index(const OffenderContext& c);

}  // namespace latpol
