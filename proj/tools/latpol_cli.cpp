#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "latpol/json_io.hpp"

using namespace latpol;

namespace {

// exit codes: 0 ok, 1 usage, 2 verification failure, 3 policy refusal,
// 4 search exhausted
constexpr int kOk = 0, kUsage = 1, kVerify = 2, kPolicy = 3, kExhausted = 4;

int default_threads() {
  const char* env = std::getenv("LATPOL_THREADS");
  if (!env) return 1;
  int n = std::atoi(env);
  return n > 0 ? n : 1;
}

EnumOptions enum_options(bool collect, bool force, int threads) {
  EnumOptions o;
  o.collect = collect;
  o.force_rank = force;
  o.threads = threads;
  return o;
}

MuInputs certified_mus(const PolarizationPair& pair) {
  // halves and parent are rank <= 32 for every shipped pair, so full
  // certification by enumeration is cheap
  auto mu_of = [](const Lattice& l) -> MuValue {
    MinNormResult r = min_norm(l);
    if (!r.certified) throw Error("minimum norm certification failed for " + l.label());
    return {r.mu, true};
  };
  MuInputs mus;
  mus.mu_M = mu_of(half_x(pair));
  mus.mu_N = mu_of(half_y(pair));
  mus.mu_U = mu_of(pair.parent);
  return mus;
}

int cmd_make(const std::string& name, const std::string& out) {
  Lattice l;
  try {
    l = make_standard(name);
  } catch (const Error& e) {
    std::string what = e.what();
    if (what.find("unknown lattice") != std::string::npos) {
      std::cerr << what << "\n";
      return kUsage;
    }
    throw;
  }
  LatticeReport rep = classify(l);
  write_json_file(out, lattice_to_json(l));
  std::cout << report_to_json(rep).dump(1) << "\n";
  return kOk;
}

int cmd_check(const std::string& path, const std::string& sublattice) {
  Lattice l = lattice_from_json(read_json_file(path));
  Json out = report_to_json(classify(l));
  if (!sublattice.empty()) {
    Lattice m = lattice_from_json(read_json_file(sublattice));
    bool ok = check_index_det(l, m);
    out["index"] = to_string(index(l, m));
    out["index_det_ok"] = ok;
    if (!ok) {
      std::cout << out.dump(1) << "\n";
      return kVerify;
    }
  }
  std::cout << out.dump(1) << "\n";
  return kOk;
}

int cmd_svp(const std::string& path, const std::string& bound, bool collect, bool force,
            int threads) {
  Lattice l = lattice_from_json(read_json_file(path));
  EnumerationReport rep =
      enumerate_short(l, parse_rat(bound), enum_options(collect, force, threads));
  std::cerr << "nodes " << rep.nodes << ", " << rep.wall_ms << " ms\n";
  std::cout << enumeration_to_json(rep).dump(1) << "\n";
  return kOk;
}

int cmd_identify(const std::string& path, bool force, int threads) {
  Lattice l = lattice_from_json(read_json_file(path));
  RootSystemId id = identify_root_system(l, enum_options(true, force, threads));
  std::cout << root_system_to_json(id).dump(1) << "\n";
  return id.ambiguous ? kVerify : kOk;
}

int cmd_polarize(const std::string& path, const std::string& fourvolution, uint64_t seed,
                 int tries, int rootless_budget, const std::string& out_prefix) {
  Lattice u = lattice_from_json(read_json_file(path));
  Fourvolution f;
  try {
    f = builtin_fourvolution(fourvolution);
    if (!equal_lattices(f.parent, u))
      throw Error("fourvolution '" + fourvolution + "' belongs to a different lattice");
  } catch (const Error&) {
    Json j = read_json_file(fourvolution);
    f.name = fourvolution;
    f.parent = u;
    f.matrix = matrix_from_json(j.contains("matrix") ? j.at("matrix") : j);
  }
  if (rootless_budget > 0) {
    Lattice x = fourvolution_sublattice(u, f);
    RootlessSearchStats stats;
    std::vector<RatMat> pool;
    if (u.label() == "Leech") pool = known_isometries("Leech_turyn");
    auto pair = search_rootless_half(u, x, rootless_budget, seed, &stats, pool);
    Json stat_json;
    stat_json["seed"] = std::to_string(stats.seed);
    stat_json["budget"] = stats.budget;
    stat_json["pool_candidates_tried"] = stats.fourvolutions_tried;
    stat_json["complements_tried"] = stats.complements_tried;
    stat_json["verified_pairs"] = stats.verified_pairs;
    if (!pair) {
      stat_json["found"] = false;
      std::cout << stat_json.dump(1) << "\n";
      std::cerr << "no rootless second half within budget\n";
      return kExhausted;
    }
    stat_json["found"] = true;
    write_json_file(out_prefix + ".pair.json", pair_to_json(*pair));
    std::cout << stat_json.dump(1) << "\n";
    return kOk;
  }
  ComplementOpts opts;
  opts.seed = seed;
  opts.tries = tries;
  PolarizationPair pair = polarize_by_fourvolution(u, f, opts);
  write_json_file(out_prefix + ".pair.json", pair_to_json(pair));
  std::cout << "even_polarization: " << (pair.even_polarization ? "true" : "false") << "\n";
  return kOk;
}

int cmd_lmn(const std::string& pair_path, int k, bool bounds_only, const std::string& out_prefix) {
  if (k < 1) {
    std::cerr << "k must be >= 1\n";
    return kUsage;
  }
  PolarizationPair pair = pair_from_json(read_json_file(pair_path));
  PolarizationCheck check = verify_polarization(pair);
  if (!check.ok) {
    for (const auto& s : check.failures) std::cerr << s << "\n";
    return kVerify;
  }
  LmnSpec spec;
  spec.pair = pair;
  spec.k = k;
  spec.label = "L(M,N," + std::to_string(k) + ")";
  MuInputs mus = certified_mus(pair);
  if (bounds_only) {
    std::cout << bounds_to_json(mu_bounds(spec, mus)).dump(1) << "\n";
    return kOk;
  }
  LmnResult r = build_L(spec, mus);
  write_json_file(out_prefix + ".lmn.json", lmn_to_json(r));
  Json summary;
  summary["report"] = report_to_json(r.report);
  summary["bounds"] = bounds_to_json(r.bounds);
  std::cout << summary.dump(1) << "\n";
  return kOk;
}

int cmd_offenders(const std::string& lmn_path, const std::string& mode_name,
                  unsigned long long count, uint64_t seed, const std::string& checkpoint) {
  LmnResult r = lmn_from_json(read_json_file(lmn_path));
  // strict lemma assertions apply exactly when both halves are rootless
  bool strict = true;
  for (const Lattice& half : {half_x(r.spec.pair), half_y(r.spec.pair)}) {
    EnumerationReport roots = enumerate_short(half, Rat(2), EnumOptions{});
    if (!roots.exhaustive) throw Error("root check on a half was not exhaustive");
    if (!roots.counts_by_norm.empty()) strict = false;
  }
  OffenderContext ctx = make_offender_context(r, strict);
  SearchMode mode;
  mode.seed = seed;
  if (mode_name == "sampled") {
    mode.exhaustive = false;
    mode.sample_count = count;
  } else if (mode_name == "exhaustive") {
    mode.exhaustive = true;
    mode.checkpoint_path = checkpoint;
  } else {
    std::cerr << "mode must be sampled or exhaustive\n";
    return kUsage;
  }
  OffenderVerdict v =
      offender_search(ctx, mode, [](const std::string& s) { std::cerr << s << "\n"; });
  std::cout << verdict_to_json(v).dump(1) << "\n";
  if (!v.lemma_violations.empty()) return kVerify;
  return v.status == OffenderVerdict::Status::pending ? kExhausted : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact lattice toolkit: polarizations, L(M,N,k), minimum norms"};
  app.require_subcommand(1);
  int threads = default_threads();

  auto* make_cmd = app.add_subcommand("make", "build a standard lattice");
  std::string make_name, make_out = "lattice.json";
  make_cmd->add_option("name", make_name)->required();
  make_cmd->add_option("-o,--out", make_out);

  auto* check_cmd = app.add_subcommand("check", "classify a lattice file");
  std::string check_path, check_sub;
  check_cmd->add_option("path", check_path)->required();
  check_cmd->add_option("--sublattice", check_sub);

  auto* svp_cmd = app.add_subcommand("svp", "enumerate vectors up to a norm bound");
  std::string svp_path, svp_bound = "2";
  bool svp_collect = false, svp_force = false;
  svp_cmd->add_option("path", svp_path)->required();
  svp_cmd->add_option("--bound", svp_bound);
  svp_cmd->add_flag("--collect", svp_collect);
  svp_cmd->add_flag("--force-rank", svp_force);

  auto* id_cmd = app.add_subcommand("identify", "ADE root system of the norm-2 vectors");
  std::string id_path;
  bool id_force = false;
  id_cmd->add_option("path", id_path)->required();
  id_cmd->add_flag("--force-rank", id_force);

  auto* pol_cmd = app.add_subcommand("polarize", "build a polarization from a fourvolution");
  std::string pol_path, pol_four, pol_out = "out";
  uint64_t pol_seed = 1;
  int pol_tries = 500, pol_rootless = 0;
  pol_cmd->add_option("path", pol_path)->required();
  pol_cmd->add_option("--fourvolution", pol_four)->required();
  pol_cmd->add_option("--seed", pol_seed);
  pol_cmd->add_option("--tries", pol_tries);
  pol_cmd->add_option("--rootless-search", pol_rootless);
  pol_cmd->add_option("-o,--out", pol_out);

  auto* lmn_cmd = app.add_subcommand("lmn", "build L(M,N,k) from a polarization pair");
  std::string lmn_pair, lmn_out = "out";
  int lmn_k = 0;
  bool lmn_bounds_only = false;
  lmn_cmd->add_option("pair", lmn_pair)->required();
  lmn_cmd->add_option("-k", lmn_k)->required();
  lmn_cmd->add_flag("--bounds-only", lmn_bounds_only);
  lmn_cmd->add_option("-o,--out", lmn_out);

  auto* off_cmd = app.add_subcommand("offenders", "norm-6 decision search on L(M,N,3)");
  std::string off_path, off_mode = "sampled", off_ckpt;
  unsigned long long off_count = 100;
  uint64_t off_seed = 1;
  off_cmd->add_option("lmn", off_path)->required();
  off_cmd->add_option("--mode", off_mode);
  off_cmd->add_option("--count", off_count);
  off_cmd->add_option("--seed", off_seed);
  off_cmd->add_option("--checkpoint", off_ckpt);

  CLI11_PARSE(app, argc, argv);

  try {
    if (make_cmd->parsed()) return cmd_make(make_name, make_out);
    if (check_cmd->parsed()) return cmd_check(check_path, check_sub);
    if (svp_cmd->parsed()) return cmd_svp(svp_path, svp_bound, svp_collect, svp_force, threads);
    if (id_cmd->parsed()) return cmd_identify(id_path, id_force, threads);
    if (pol_cmd->parsed())
      return cmd_polarize(pol_path, pol_four, pol_seed, pol_tries, pol_rootless, pol_out);
    if (lmn_cmd->parsed()) return cmd_lmn(lmn_pair, lmn_k, lmn_bounds_only, lmn_out);
    if (off_cmd->parsed()) return cmd_offenders(off_path, off_mode, off_count, off_seed, off_ckpt);
  } catch (const PolicyRefusal& e) {
    std::cerr << e.what() << "\n";
    return kPolicy;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kVerify;
  }
  return kUsage;
}
