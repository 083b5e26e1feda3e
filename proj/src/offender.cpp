#include "latpol/offender.hpp"

#include <algorithm>
#include <fstream>

#include "latpol/json_io.hpp"

namespace latpol {

namespace {

RatVec concat3(const RatVec& a, const RatVec& b, const RatVec& c) {
  RatVec out;
  out.reserve(a.size() * 3);
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  out.insert(out.end(), c.begin(), c.end());
  return out;
}

Rat norm_in(const Lattice& l, const RatVec& v) { return norm_under(l.ambient_gram(), v); }

Rat inner_in(const Lattice& l, const RatVec& a, const RatVec& b) {
  return inner_under(l.ambient_gram(), a, b);
}

}  // namespace

OffenderContext make_offender_context(const LmnResult& r, bool strict) {
  if (r.spec.k != 3) throw Error("offender engine needs k = 3");
  OffenderContext c;
  c.L = r.L;
  c.M = half_x(r.spec.pair);
  c.N = half_y(r.spec.pair);
  c.upsilon = upsilon_scale(r.spec.pair.parent);
  c.two_upsilon =
      canonicalized(Lattice(c.upsilon.ambient_gram(), c.upsilon.basis().scaled(Rat(2))));
  c.strict = strict;
  if (strict) {
    for (const Lattice* half : {&c.M, &c.N}) {
      EnumerationReport roots = enumerate_short(*half, Rat(2), EnumOptions{});
      if (!roots.exhaustive || !roots.counts_by_norm.empty())
        throw Error("strict offender context requires rootless halves");
    }
  }
  return c;
}

bool is_admissible(const OffenderContext& c, const AdmissibleTuple& t) {
  if (!member(c.N, t.w)) return false;
  if (!member(c.M, t.x) || !member(c.M, t.y) || !member(c.M, t.z)) return false;
  RatVec s = add(add(t.x, t.y), t.z);
  return member(c.two_upsilon, s).has_value();
}

RatVec tuple_vector(const OffenderContext& c, const AdmissibleTuple& t) {
  if (!is_admissible(c, t)) throw Error("tuple_vector: tuple is not admissible");
  RatVec v = concat3(add(t.x, t.w), add(t.y, t.w), add(t.z, t.w));
  if (!member(c.L, v)) throw Error("tuple_vector: image is not in L");
  return v;
}

bool is_offender(const OffenderContext& c, const AdmissibleTuple& t) {
  if (!is_admissible(c, t)) return false;
  return norm_in(c.upsilon, add(t.x, t.w)) == 2 && norm_in(c.upsilon, add(t.y, t.w)) == 2 &&
         norm_in(c.upsilon, add(t.z, t.w)) == 2;
}

namespace {

// norm-4 vectors of the coset w + 2*Upsilon, sorted for determinism
std::vector<RatVec> norm4_frame(const OffenderContext& c, const RatVec& w) {
  EnumOptions opts;
  opts.collect = true;
  EnumerationReport rep = enumerate_coset(c.two_upsilon, w, Rat(4), opts);
  std::vector<RatVec> out;
  for (const RatVec& v : rep.witnesses)
    if (norm_in(c.upsilon, v) == 4) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

AdmissibleTuple normalize_w(const OffenderContext& c, const AdmissibleTuple& t) {
  if (member(c.M, t.w)) throw Error("normalize_w: w must lie outside M");
  if (norm_in(c.upsilon, t.w) == 4) return t;
  std::vector<RatVec> frame = norm4_frame(c, t.w);
  if (frame.empty())
    throw Error("normalize_w: no norm-4 representative in w + 2*Upsilon");
  RatVec wp = frame.front();
  // w' = w - 2v: shift x,y,z by +2v = w - w'
  RatVec shift = sub(t.w, wp);
  AdmissibleTuple out;
  out.w = wp;
  out.x = add(t.x, shift);
  out.y = add(t.y, shift);
  out.z = add(t.z, shift);
  if (tuple_vector(c, out) != tuple_vector(c, t))
    throw Error("normalize_w: equivalence changed the L-vector");
  return out;
}

SpanReport span_checks(const OffenderContext& c, const AdmissibleTuple& t) {
  SpanReport r;
  RatMat gens(4, c.upsilon.ambient_dim());
  gens.set_row(0, t.w);
  gens.set_row(1, t.x);
  gens.set_row(2, t.y);
  gens.set_row(3, t.z);
  RatMat g = gens * c.upsilon.ambient_gram() * gens.transpose();
  r.integral = true;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (!is_integer(g.at(i, j))) r.integral = false;
  r.even = r.integral;
  for (int i = 0; i < 4 && r.even; ++i)
    if (!is_even_integer(g.at(i, i))) r.even = false;
  r.span_rank = rank(gens);
  // the image of span{w,x,y,z} in (M+N)/M is generated by w + M and has
  // order 2: w outside M, 2w inside M
  r.image_order_2 = !member(c.M, t.w) && member(c.M, scaled(t.w, Rat(2))).has_value();
  return r;
}

std::vector<RatVec> roots_for(const OffenderContext& c, const RatVec& w) {
  if (norm_in(c.upsilon, w) != 4) throw Error("roots_for: w must have norm 4");
  if (!member(c.N, w)) throw Error("roots_for: w must lie in N");
  if (member(c.M, w)) throw Error("roots_for: w must lie outside M");
  EnumOptions opts;
  opts.collect = true;
  EnumerationReport rep = enumerate_coset(c.M, w, Rat(2), opts);
  std::vector<RatVec> out;
  for (const RatVec& v : rep.witnesses)
    if (norm_in(c.upsilon, v) == 2) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<AdmissibleTuple> triples_for(const OffenderContext& c, const RatVec& w,
                                         const std::vector<RatVec>& roots,
                                         std::vector<std::string>* violations, size_t limit) {
  std::vector<AdmissibleTuple> out;
  int m = int(roots.size());
  auto note = [&](const std::string& what) {
    if (violations) violations->push_back(what);
  };
  // coordinates w.r.t. 2*Upsilon once per root; the sum test then reduces
  // to integrality of coordinate sums instead of a solve per triple
  auto coords_of = [&](const RatVec& v) {
    auto sc = span_coordinates(c.two_upsilon, v);
    if (!sc) throw Error("triples_for: vector outside the ambient span");
    return *sc;
  };
  std::vector<RatVec> root_coords(m);
  for (int i = 0; i < m; ++i) root_coords[i] = coords_of(roots[i]);
  RatVec w3_coords = scaled(coords_of(w), Rat(3));
  auto sum_in_two_upsilon = [&](int i, int j, int k) {
    for (size_t idx = 0; idx < w3_coords.size(); ++idx) {
      Rat v = root_coords[i][idx] + root_coords[j][idx] + root_coords[k][idx] - w3_coords[idx];
      if (!is_integer(v)) return false;
    }
    return true;
  };
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j)
      for (int k = j; k < m; ++k) {
        const RatVec &r = roots[i], &s = roots[j], &t = roots[k];
        if (!sum_in_two_upsilon(i, j, k)) continue;

        // this is an offender; the structural lemmas must hold on it in a
        // genuine both-halves-rootless instance
        Rat rs = inner_in(c.upsilon, r, s);
        Rat rt = inner_in(c.upsilon, r, t);
        Rat st = inner_in(c.upsilon, s, t);
        bool orthogonal = rs == 0 && rt == 0 && st == 0;
        if (!orthogonal) {
          if (c.strict) note("offender roots are not pairwise orthogonal");
          continue;
        }
        Rat wr = inner_in(c.upsilon, w, r);
        Rat ws = inner_in(c.upsilon, w, s);
        Rat wt = inner_in(c.upsilon, w, t);
        std::vector<Rat> pattern = {wr, ws, wt};
        std::sort(pattern.begin(), pattern.end());
        bool pattern_ok =
            (pattern[0] == 0 && pattern[1] == 0 && (pattern[2] == 1 || pattern[2] == -1)) ||
            (pattern[0] == -1 && pattern[1] == 0 && pattern[2] == 0);
        if (!pattern_ok) {
          if (c.strict) note("inner products (w,roots) are not {0,0,+-1}");
          continue;
        }

        // order the roots so the nonzero inner product sits on z
        RatVec rr = r, ss = s, tt = t;
        if (wr != 0) std::swap(rr, tt);
        else if (ws != 0) std::swap(ss, tt);
        AdmissibleTuple cand;
        cand.w = w;
        cand.x = sub(rr, w);
        cand.y = sub(ss, w);
        cand.z = sub(tt, w);
        if (inner_in(c.upsilon, w, tt) == -1) {
          // Flip to the norm-4 final component: (-w, -x, -y, z + 2w).
          AdmissibleTuple flipped;
          flipped.w = negated(cand.w);
          flipped.x = negated(cand.x);
          flipped.y = negated(cand.y);
          flipped.z = add(cand.z, scaled(w, Rat(2)));
          cand = flipped;
        }
        if (!is_offender(c, cand)) {
          note("normalized candidate stopped being an offender");
          continue;
        }
        // super offender shape: |w|^2 = 4 and norms of x,y,z in some order
        // 6,6,4
        std::vector<Rat> norms = {norm_in(c.upsilon, cand.x), norm_in(c.upsilon, cand.y),
                                  norm_in(c.upsilon, cand.z)};
        std::sort(norms.begin(), norms.end());
        bool shape_ok = norms[0] == 4 && norms[1] == 6 && norms[2] == 6;
        if (!shape_ok && c.strict) note("super offender norms are not {6,6,4}");
        SpanReport span = span_checks(c, cand);
        if (!span.ok() && c.strict) note("offender span is not an even integral lattice");
        out.push_back(std::move(cand));
        if (!c.strict && out.size() >= limit) return out;
      }
  return out;
}

WClassIndex w_class_index(const OffenderContext& c) {
  // coordinates of 2*Upsilon inside N, row HNF: mixed-radix representatives
  RatMat t = c.N.basis().transpose();
  IntMat coords(c.two_upsilon.rank(), c.N.rank());
  for (int i = 0; i < c.two_upsilon.rank(); ++i) {
    SolveResult s = solve(t, c.two_upsilon.basis().row(i));
    if (s.status != SolveStatus::ok) throw Error("w_class_index: 2*Upsilon not inside N");
    for (int j = 0; j < c.N.rank(); ++j) {
      if (!is_integer(s.x[j])) throw Error("w_class_index: non-integer coordinates");
      coords.at(i, j) = s.x[j].get_num();
    }
  }
  HnfResult h = hnf(coords);
  if (h.rank != c.N.rank()) throw Error("w_class_index: 2*Upsilon has infinite index");
  WClassIndex idx;
  idx.reps_in_N_coords = h.h;
  Int total = 1;
  for (int i = 0; i < h.rank; ++i) {
    idx.moduli.push_back(h.h.at(i, i));
    total *= h.h.at(i, i);
  }
  if (!total.fits_ulong_p()) throw Error("w_class_index: class count overflow");
  idx.total = total.get_ui() - 1;  // nontrivial classes
  return idx;
}

RatVec WClassIndex::representative(const Lattice& N, unsigned long long id) const {
  // id in [1, total]; decompose in mixed radix over the nontrivial moduli
  std::vector<unsigned long long> digits(moduli.size(), 0);
  unsigned long long rest = id;
  for (size_t i = 0; i < moduli.size(); ++i) {
    unsigned long long m = moduli[i].get_ui();
    digits[i] = rest % m;
    rest /= m;
  }
  if (rest != 0) throw Error("w_class_index: id out of range");
  RatVec v(N.ambient_dim(), Rat(0));
  for (size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] == 0) continue;
    for (int j = 0; j < N.ambient_dim(); ++j)
      v[j] += Rat(long(digits[i])) * N.basis().at(int(i), j);
  }
  return v;
}

std::string to_string(OffenderVerdict::Status s) {
  switch (s) {
    case OffenderVerdict::Status::norm6_found: return "norm6_found";
    case OffenderVerdict::Status::none_found: return "none_found";
    default: return "pending";
  }
}

namespace {

struct Checkpoint {
  std::string path;
  std::string fingerprint;
  std::vector<bool> done;  // indexed by class id
  unsigned long long done_count = 0;

  void load(unsigned long long total) {
    done.assign(total + 1, false);
    std::ifstream in(path);
    if (!in) return;  // fresh run
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      Json j;
      try {
        j = Json::parse(line);
      } catch (...) {
        throw Error("checkpoint corruption: bad line in " + path);
      }
      if (first) {
        if (!j.contains("instance") || j["instance"] != fingerprint)
          throw Error("checkpoint belongs to a different instance");
        first = false;
        continue;
      }
      unsigned long long id = j.at("w_class_id").get<unsigned long long>();
      if (id > total) throw Error("checkpoint corruption: class id out of range");
      // only witness-free classes are final; a class that produced a norm-6
      // witness is revisited so the resumed run can regenerate the vector
      if (j.value("result", "") == "none" && !done[id]) {
        done[id] = true;
        ++done_count;
      }
    }
    if (first && !done.empty()) {
      // file existed but had no header
      std::ifstream probe(path);
      std::string any;
      if (std::getline(probe, any) && !any.empty())
        throw Error("checkpoint corruption: missing header");
    }
  }

  void start(unsigned long long total) {
    std::ifstream probe(path);
    if (probe && probe.peek() != std::ifstream::traits_type::eof()) return;  // resuming
    std::ofstream out(path, std::ios::app);
    if (!out) throw Error("cannot open checkpoint " + path);
    Json h;
    h["instance"] = fingerprint;
    h["total_w_classes"] = total;
    out << h.dump() << "\n";
  }

  void record(unsigned long long id, int roots_found, unsigned long long triples_tested,
              const std::string& result) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw Error("cannot append to checkpoint " + path);
    Json j;
    j["w_class_id"] = id;
    j["roots_found"] = roots_found;
    j["triples_tested"] = triples_tested;
    j["result"] = result;
    out << j.dump() << "\n";
    out.flush();
  }
};

}  // namespace

OffenderVerdict offender_search(const OffenderContext& c, const SearchMode& mode,
                                const std::function<void(const std::string&)>& progress) {
  OffenderVerdict verdict;
  verdict.coverage.mode = mode.exhaustive ? "exhaustive" : "sampled";
  verdict.coverage.seed = mode.seed;

  WClassIndex index = w_class_index(c);
  verdict.coverage.total_w_classes = index.total;

  std::vector<unsigned long long> order;
  if (mode.exhaustive) {
    order.resize(index.total);
    for (unsigned long long i = 0; i < index.total; ++i) order[i] = i + 1;
  } else {
    // sampled without replacement: partial Fisher-Yates over the id range
    unsigned long long want = std::min<unsigned long long>(mode.sample_count, index.total);
    std::vector<unsigned long long> ids(index.total);
    for (unsigned long long i = 0; i < index.total; ++i) ids[i] = i + 1;
    Prng rng(mode.seed);
    for (unsigned long long i = 0; i < want; ++i) {
      unsigned long long j = i + rng.below(index.total - i);
      std::swap(ids[i], ids[j]);
    }
    order.assign(ids.begin(), ids.begin() + want);
  }

  Checkpoint ckpt;
  if (mode.exhaustive && !mode.checkpoint_path.empty()) {
    ckpt.path = mode.checkpoint_path;
    Json fp;
    fp["L"] = lattice_to_json(c.L);
    fp["N"] = lattice_to_json(c.N);
    ckpt.fingerprint = json_fingerprint(fp);
    ckpt.load(index.total);
    ckpt.start(index.total);
  }

  unsigned long long processed = 0;
  for (unsigned long long id : order) {
    if (!ckpt.path.empty() && ckpt.done[id]) continue;  // resumed class
    RatVec w0 = index.representative(c.N, id);
    ++processed;

    // norm-4 representative; its frame when the strict lemmas apply
    RatVec w;
    int roots_found = 0;
    unsigned long long triples_tested = 0;
    std::string result = "none";
    std::vector<RatVec> frame = norm4_frame(c, w0);
    if (c.strict) {
      if (frame.size() != 48)
        verdict.lemma_violations.push_back(
            "class " + std::to_string(id) + ": norm-4 frame has " +
            std::to_string(frame.size()) + " vectors, expected 48");
      for (size_t a = 0; a < frame.size() && frame.size() <= 48; ++a)
        for (size_t b = a + 1; b < frame.size(); ++b) {
          Rat ip = inner_in(c.upsilon, frame[a], frame[b]);
          if (ip != 0 && ip != 4 && ip != -4) {
            verdict.lemma_violations.push_back("class " + std::to_string(id) +
                                               ": frame vectors neither proportional nor orthogonal");
            a = frame.size();
            break;
          }
        }
    }
    if (!frame.empty()) {
      w = frame.front();
      std::vector<RatVec> roots = roots_for(c, w);
      roots_found = int(roots.size());
      if (roots_found >= 3) {
        std::vector<AdmissibleTuple> supers =
            triples_for(c, w, roots, &verdict.lemma_violations, 1);
        triples_tested =
            (unsigned long long)(roots.size()) * (roots.size() + 1) * (roots.size() + 2) / 6;
        if (!supers.empty()) {
          RatVec v = tuple_vector(c, supers.front());
          if (norm_under(c.L.ambient_gram(), v) != 6)
            throw Error("offender witness does not have norm 6");
          if (!member(c.L, v)) throw Error("offender witness is not in L");
          verdict.status = OffenderVerdict::Status::norm6_found;
          verdict.witness = v;
          result = "norm6";
        }
      }
    }
    if (!ckpt.path.empty()) ckpt.record(id, roots_found, triples_tested, result);
    verdict.coverage.w_classes_tested = processed + ckpt.done_count;
    if (progress && processed % 128 == 0)
      progress("classes " + std::to_string(processed + ckpt.done_count) + "/" +
               std::to_string(mode.exhaustive ? index.total : order.size()));
    if (verdict.status == OffenderVerdict::Status::norm6_found && mode.stop_at_first_witness)
      return verdict;
  }
  if (verdict.status == OffenderVerdict::Status::norm6_found) return verdict;

  verdict.coverage.w_classes_tested = processed + ckpt.done_count;
  if (mode.exhaustive && verdict.coverage.w_classes_tested >= index.total)
    verdict.status = OffenderVerdict::Status::none_found;
  else
    verdict.status = OffenderVerdict::Status::pending;
  return verdict;
}

}  // namespace latpol
