#include "latpol/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <thread>

namespace latpol {

namespace {

// Relative slack added to the floating radius; accepted candidates are
// re-verified exactly, so the slack only costs a few spurious checks.
constexpr double kRadiusSlack = 1e-6;

struct Gso {
  int n = 0;
  std::vector<std::vector<double>> mu;  // unit lower triangular
  std::vector<double> rdiag;            // squared GSO norms
};

Gso gso_of(const RatMat& q) {
  Gso g;
  g.n = q.rows();
  g.mu.assign(g.n, std::vector<double>(g.n, 0.0));
  g.rdiag.assign(g.n, 0.0);
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = q.at(i, j).get_d();
      for (int l = 0; l < j; ++l) s -= g.mu[i][l] * g.mu[j][l] * g.rdiag[l];
      if (j < i)
        g.mu[i][j] = s / g.rdiag[j];
      else
        g.rdiag[i] = s;
    }
    if (g.rdiag[i] <= 0) throw Error("enumerate: Gram not positive definite in doubles");
    g.mu[i][i] = 1.0;
  }
  return g;
}

void int128_to_mpz(__int128 v, Int& out) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -(unsigned __int128)v : (unsigned __int128)v;
  unsigned long hi = (unsigned long)(u >> 64);
  unsigned long lo = (unsigned long)u;
  out = Int(hi);
  out <<= 64;
  out += Int(lo);
  if (neg) out = -out;
}

// Exact norms under the cleared-denominator Gram q_int / q_den.
struct ExactNorm {
  IntMat q_int;
  Int q_den;
  int n = 0;
  bool small = false;  // entries fit the __int128 fast path
  std::vector<long> q_small;

  void init(const RatMat& q) {
    n = q.rows();
    q_den = denominator_lcm(q);
    q_int = scaled_to_int(q, q_den);
    small = true;
    q_small.assign(size_t(n) * n, 0);
    for (int i = 0; i < n && small; ++i)
      for (int j = 0; j < n; ++j) {
        if (!q_int.at(i, j).fits_slong_p() ||
            std::labs(q_int.at(i, j).get_si()) > (1L << 28)) {
          small = false;
          break;
        }
        q_small[size_t(i) * n + j] = q_int.at(i, j).get_si();
      }
  }

  Rat norm_lattice(const std::vector<long>& z) const {
    bool in_range = small;
    if (in_range)
      for (long v : z)
        if (std::labs(v) > (1L << 16)) { in_range = false; break; }
    if (in_range) {
      __int128 acc = 0;
      for (int i = 0; i < n; ++i) {
        if (z[i] == 0) continue;
        long long row = 0;
        for (int j = 0; j < n; ++j) row += (long long)q_small[size_t(i) * n + j] * z[j];
        acc += (__int128)z[i] * row;
      }
      Int num;
      int128_to_mpz(acc, num);
      return rat(num, q_den);
    }
    Int acc = 0;
    for (int i = 0; i < n; ++i) {
      if (z[i] == 0) continue;
      Int row = 0;
      for (int j = 0; j < n; ++j)
        if (z[j] != 0) row += q_int.at(i, j) * Int(z[j]);
      acc += Int(z[i]) * row;
    }
    return rat(acc, q_den);
  }

  Rat norm_coset(const std::vector<long>& z, const RatVec& c) const {
    RatVec y(n);
    for (int i = 0; i < n; ++i) y[i] = Rat(z[i]) + c[i];
    Rat acc(0);
    for (int i = 0; i < n; ++i) {
      if (y[i] == 0) continue;
      Rat row(0);
      for (int j = 0; j < n; ++j)
        if (y[j] != 0) row += Rat(q_int.at(i, j)) * y[j];
      acc += y[i] * row;
    }
    return acc / Rat(q_den);
  }
};

struct Hit {
  std::vector<long> z;
  Rat norm;
};

// Depth-first walk of the subtree with the top coordinate fixed. Levels
// iterate over the exact integer interval allowed by the remaining radius;
// no zigzag state, so the control flow stays visibly correct. Each job is a
// pure function of its inputs; results merge by addition.
struct SubtreeJob {
  const Gso* gso = nullptr;
  const ExactNorm* exact = nullptr;
  const RatVec* coset = nullptr;
  std::vector<double> center;  // coset coordinates in doubles (zero for SVP)
  double radius = 0.0;
  Rat bound;
  bool svp_half = false;  // canonical sign half: topmost nonzero coord > 0
  long top = 0;
  unsigned long long node_budget = 0;
  bool stop_after_first = false;
  std::atomic<bool>* global_stop = nullptr;

  unsigned long long nodes = 0;
  bool budget_hit = false;
  std::vector<Hit> hits;

  std::vector<long> x;

  void run() {
    int n = gso->n;
    x.assign(n, 0);
    x[n - 1] = top;
    double y = double(top) + center[n - 1];
    double d = y * y * gso->rdiag[n - 1];
    ++nodes;
    if (d > radius) return;
    if (n == 1) {
      try_accept();
      return;
    }
    std::vector<double> sums(n, 0.0);
    for (int j = 0; j < n - 1; ++j) sums[j] = y * gso->mu[n - 1][j];
    walk(n - 2, d, sums, top == 0);
  }

  void walk(int i, double partdist, const std::vector<double>& sums, bool zero_above) {
    if (budget_hit || (global_stop && global_stop->load(std::memory_order_relaxed))) return;
    double c = center[i] + sums[i];
    double room = radius - partdist;
    double w = std::sqrt(std::max(room, 0.0) / gso->rdiag[i]) + 1e-9;
    long lo = long(std::ceil(-c - w));
    long hi = long(std::floor(-c + w));
    if (svp_half && zero_above && lo < 0) lo = 0;
    for (long v = lo; v <= hi; ++v) {
      ++nodes;
      if (nodes > node_budget) { budget_hit = true; return; }
      // b*-coefficient at this level includes the inherited sums; the
      // contribution to lower levels uses the raw coordinate only
      double y_star = double(v) + c;
      double d = partdist + y_star * y_star * gso->rdiag[i];
      if (d > radius) continue;
      x[i] = v;
      if (i == 0) {
        try_accept();
        if (global_stop && global_stop->load(std::memory_order_relaxed)) return;
      } else {
        double y_raw = double(v) + center[i];
        std::vector<double> s2(sums.begin(), sums.begin() + i);
        s2.resize(i);
        for (int j = 0; j < i; ++j) s2[j] = sums[j] + y_raw * gso->mu[i][j];
        walk(i - 1, d, s2, zero_above && v == 0);
        if (budget_hit) return;
      }
    }
    x[i] = 0;
  }

  void try_accept() {
    Rat nn = coset ? exact->norm_coset(x, *coset) : exact->norm_lattice(x);
    if (nn > bound) return;  // slack candidate rejected by the exact check
    if (!coset) {
      bool zero = true;
      for (long v : x)
        if (v) { zero = false; break; }
      if (zero) return;
    }
    hits.push_back({x, nn});
    if (stop_after_first && global_stop) global_stop->store(true, std::memory_order_relaxed);
  }
};

}  // namespace

namespace detail {

EnumerationReport enumerate_impl(const Lattice& input, const RatVec* target, const Rat& bound,
                                 const EnumOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  if (bound <= 0) throw Error("enumerate: bound must be positive");
  if (input.rank() > opts.rank_cap && !opts.force_rank)
    throw PolicyRefusal("enumerate: rank " + std::to_string(input.rank()) +
                        " exceeds the exhaustive policy cap " + std::to_string(opts.rank_cap) +
                        " (use the force flag to override)");

  Lattice l = lll(input);
  RatVec coset_coords;
  bool has_coset = false;
  if (target) {
    auto c = span_coordinates(l, *target);
    if (!c) throw Error("enumerate_coset: target is outside the lattice span");
    coset_coords = *c;
    has_coset = true;
  }

  RatMat q = gram(l);
  Gso gso = gso_of(q);
  ExactNorm exact;
  exact.init(q);

  int n = l.rank();
  std::vector<double> center(n, 0.0);
  if (has_coset)
    for (int i = 0; i < n; ++i) center[i] = coset_coords[i].get_d();

  double radius = bound.get_d() * (1.0 + kRadiusSlack) + 1e-9;
  double span = std::sqrt(radius / gso.rdiag[n - 1]) + 1e-9;
  long lo = long(std::ceil(-center[n - 1] - span));
  long hi = long(std::floor(-center[n - 1] + span));
  bool svp_half = !has_coset;
  if (svp_half && lo < 0) lo = 0;

  std::vector<long> tops;
  for (long t = lo; t <= hi; ++t) tops.push_back(t);

  int workers = std::max(1, opts.threads);
  if (opts.stop_after_first) workers = 1;  // keeps the found witness deterministic
  workers = std::min<long>(workers, std::max<long>(long(tops.size()), 1));
  std::atomic<bool> stop{false};
  std::vector<std::vector<SubtreeJob>> plans(workers);
  for (size_t i = 0; i < tops.size(); ++i) {
    SubtreeJob job;
    job.gso = &gso;
    job.exact = &exact;
    job.coset = has_coset ? &coset_coords : nullptr;
    job.center = center;
    job.radius = radius;
    job.bound = bound;
    job.svp_half = svp_half;
    job.top = tops[i];
    job.node_budget = opts.node_budget / std::max<size_t>(tops.size(), 1) + 1;
    job.stop_after_first = opts.stop_after_first;
    job.global_stop = &stop;
    plans[i % workers].push_back(std::move(job));
  }

  auto run_plan = [](std::vector<SubtreeJob>* jobs) {
    for (auto& j : *jobs) j.run();
  };
  if (workers == 1) {
    run_plan(&plans[0]);
  } else {
    std::vector<std::thread> pool;
    for (auto& p : plans) pool.emplace_back(run_plan, &p);
    for (auto& th : pool) th.join();
  }

  // precomputed fractional offset for coset witnesses: v = (z + c) * basis
  RatVec frac;
  if (has_coset && opts.collect) {
    frac.assign(l.ambient_dim(), Rat(0));
    for (int i = 0; i < n; ++i)
      if (coset_coords[i] != 0)
        for (int j = 0; j < l.ambient_dim(); ++j)
          frac[j] += coset_coords[i] * l.basis().at(i, j);
  }

  EnumerationReport rep;
  rep.bound = bound;
  rep.exhaustive = !(opts.stop_after_first && stop.load());
  for (auto& p : plans)
    for (auto& j : p) {
      rep.nodes += j.nodes;
      if (j.budget_hit) rep.exhaustive = false;
      for (auto& h : j.hits) {
        rep.counts_by_norm[h.norm] += svp_half ? 2 : 1;
        if (opts.collect) {
          IntVec zi(n);
          for (int i = 0; i < n; ++i) zi[i] = Int(h.z[i]);
          RatVec v = from_coordinates(l, zi);
          if (has_coset) {
            rep.witnesses.push_back(add(v, frac));
          } else {
            rep.witnesses.push_back(v);
            rep.witnesses.push_back(negated(v));
          }
        }
      }
    }

  if (opts.collect) std::sort(rep.witnesses.begin(), rep.witnesses.end());
  rep.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace detail

EnumerationReport enumerate_short(const Lattice& l, const Rat& bound, const EnumOptions& opts) {
  return detail::enumerate_impl(l, nullptr, bound, opts);
}

EnumerationReport enumerate_coset(const Lattice& l, const RatVec& t, const Rat& bound,
                                  const EnumOptions& opts) {
  return detail::enumerate_impl(l, &t, bound, opts);
}

MinNormResult min_norm(const Lattice& l, const EnumOptions& opts) {
  MinNormResult res;
  Lattice red = lll(l);
  RatMat q = gram(red);
  Rat best = q.at(0, 0);
  int best_i = 0;
  for (int i = 1; i < red.rank(); ++i)
    if (q.at(i, i) < best) { best = q.at(i, i); best_i = i; }

  if (l.rank() > opts.rank_cap && !opts.force_rank) {
    // policy: no exhaustive certification at this rank; upper witness only
    res.mu = best;
    IntVec e(red.rank(), Int(0));
    e[best_i] = 1;
    res.witness = from_coordinates(red, e);
    res.certified = false;
    return res;
  }

  EnumOptions copts = opts;
  copts.collect = true;
  copts.stop_after_first = false;
  // progressive bounds: empty sweeps at small radii are cheap and certify
  // as they go
  Rat bound = best / 4;
  if (bound < 1) bound = Rat(1);
  while (true) {
    EnumerationReport rep = enumerate_short(red, bound, copts);
    if (!rep.counts_by_norm.empty()) {
      Rat mu = rep.counts_by_norm.begin()->first;
      res.mu = mu;
      res.certified = rep.exhaustive;
      for (const RatVec& w : rep.witnesses) {
        if (norm_under(red.ambient_gram(), w) == mu) {
          res.witness = w;  // witnesses sorted: this is the lexicographic minimum
          break;
        }
      }
      return res;
    }
    if (!rep.exhaustive) {
      res.mu = best;
      IntVec e(red.rank(), Int(0));
      e[best_i] = 1;
      res.witness = from_coordinates(red, e);
      res.certified = false;
      return res;
    }
    if (bound >= best) throw Error("min_norm: exhaustive sweep missed a basis vector");
    bound = std::min(Rat(bound * 2), best);
  }
}

RootSystemId identify_root_system(const Lattice& l, const EnumOptions& opts) {
  EnumOptions copts = opts;
  copts.collect = true;
  EnumerationReport rep = enumerate_short(l, Rat(2), copts);
  if (!rep.exhaustive) throw Error("identify_root_system: enumeration budget exhausted");

  std::vector<RatVec> roots;
  for (const RatVec& w : rep.witnesses)
    if (norm_under(l.ambient_gram(), w) == 2) roots.push_back(w);

  RootSystemId id;
  id.total_roots = roots.size();
  if (roots.empty()) return id;

  int m = int(roots.size());
  std::vector<int> parent(m);
  for (int i = 0; i < m; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (inner_under(l.ambient_gram(), roots[i], roots[j]) != 0)
        parent[find(i)] = find(j);

  std::map<int, std::vector<int>> comps;
  for (int i = 0; i < m; ++i) comps[find(i)].push_back(i);

  for (auto& [key, members] : comps) {
    RootSystemId::Component c;
    c.root_count = members.size();
    RatMat span(int(members.size()), l.ambient_dim());
    for (size_t i = 0; i < members.size(); ++i) span.set_row(int(i), roots[members[i]]);
    c.rank = rank(span);
    unsigned long long cnt = c.root_count;
    int r = c.rank;
    if (cnt == (unsigned long long)(r) * (r + 1))
      c.type = 'A';
    else if (r >= 4 && cnt == 2ULL * r * (r - 1))
      c.type = 'D';
    else if ((r == 6 && cnt == 72) || (r == 7 && cnt == 126) || (r == 8 && cnt == 240))
      c.type = 'E';
    else {
      c.type = '?';
      id.ambiguous = true;
    }
    id.components.push_back(c);
  }
  std::sort(id.components.begin(), id.components.end(),
            [](const RootSystemId::Component& a, const RootSystemId::Component& b) {
              if (a.rank != b.rank) return a.rank < b.rank;
              if (a.type != b.type) return a.type < b.type;
              return a.root_count < b.root_count;
            });
  return id;
}

}  // namespace latpol
