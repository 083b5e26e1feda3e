#include "latpol/json_io.hpp"

#include <fstream>

namespace latpol {

Json rat_to_json(const Rat& r) { return to_string(r); }

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(long(j.get<long long>()));
  if (!j.is_string()) throw Error("expected a rational string");
  return parse_rat(j.get<std::string>());
}

Json matrix_to_json(const RatMat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(rat_to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

RatMat matrix_from_json(const Json& j) {
  if (!j.is_array()) throw Error("expected an array of rows");
  int rows = int(j.size());
  if (rows == 0) return RatMat();
  int cols = int(j[0].size());
  RatMat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (int(j[i].size()) != cols) throw Error("ragged matrix rows");
    for (int k = 0; k < cols; ++k) m.at(i, k) = rat_from_json(j[i][k]);
  }
  return m;
}

Json vector_to_json(const RatVec& v) {
  Json a = Json::array();
  for (const Rat& r : v) a.push_back(rat_to_json(r));
  return a;
}

RatVec vector_from_json(const Json& j) {
  RatVec v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v[i] = rat_from_json(j[i]);
  return v;
}

Json lattice_to_json(const Lattice& l) {
  Json j;
  j["label"] = l.label();
  j["ambient_dim"] = l.ambient_dim();
  j["ambient_gram"] = matrix_to_json(l.ambient_gram());
  j["basis"] = matrix_to_json(l.basis());
  return j;
}

Lattice lattice_from_json(const Json& j) {
  RatMat gram = matrix_from_json(j.at("ambient_gram"));
  RatMat basis = matrix_from_json(j.at("basis"));
  std::string label = j.value("label", "");
  if (j.contains("ambient_dim") && int(j.at("ambient_dim").get<int>()) != gram.rows())
    throw Error("ambient_dim disagrees with ambient_gram");
  return Lattice(std::move(gram), std::move(basis), std::move(label));
}

Json report_to_json(const LatticeReport& r) {
  Json j;
  j["rank"] = r.rank;
  j["det"] = rat_to_json(r.det);
  j["is_integral"] = r.is_integral;
  j["is_even"] = r.is_even;
  j["is_unimodular"] = r.is_unimodular;
  return j;
}

Json enumeration_to_json(const EnumerationReport& r) {
  Json j;
  j["bound"] = rat_to_json(r.bound);
  j["exhaustive"] = r.exhaustive;
  Json counts = Json::object();
  for (const auto& [norm, count] : r.counts_by_norm)
    counts[to_string(norm)] = std::to_string(count);
  j["counts_by_norm"] = std::move(counts);
  j["nodes"] = std::to_string(r.nodes);
  if (!r.witnesses.empty()) {
    Json w = Json::array();
    for (const RatVec& v : r.witnesses) w.push_back(vector_to_json(v));
    j["witnesses"] = std::move(w);
  }
  return j;
}

Json pair_to_json(const PolarizationPair& p) {
  Json j;
  j["parent"] = lattice_to_json(p.parent);
  j["X"] = lattice_to_json(p.X);
  j["Y"] = lattice_to_json(p.Y);
  j["even_polarization"] = p.even_polarization;
  return j;
}

PolarizationPair pair_from_json(const Json& j) {
  PolarizationPair p;
  p.parent = lattice_from_json(j.at("parent"));
  p.X = lattice_from_json(j.at("X"));
  p.Y = lattice_from_json(j.at("Y"));
  p.even_polarization = j.at("even_polarization").get<bool>();
  return p;
}

Json root_system_to_json(const RootSystemId& id) {
  Json j;
  Json comps = Json::array();
  for (const auto& c : id.components) {
    Json cj;
    cj["type"] = std::string(1, c.type);
    cj["rank"] = c.rank;
    cj["root_count"] = std::to_string(c.root_count);
    comps.push_back(std::move(cj));
  }
  j["components"] = std::move(comps);
  j["total_roots"] = std::to_string(id.total_roots);
  j["ambiguous"] = id.ambiguous;
  return j;
}

Json bounds_to_json(const MuBounds& b) {
  Json j;
  j["mu_M"] = rat_to_json(b.mu_M);
  j["mu_N"] = rat_to_json(b.mu_N);
  j["mu_U"] = rat_to_json(b.mu_U);
  j["mu_MU"] = rat_to_json(b.mu_MU);
  j["lower"] = rat_to_json(b.lower);
  j["upper"] = rat_to_json(b.upper);
  j["lower_effective"] = rat_to_json(b.lower_effective);
  j["l_is_even"] = b.l_is_even;
  j["tainted"] = b.tainted;
  return j;
}

namespace {

MuBounds bounds_from_json(const Json& j) {
  MuBounds b;
  b.mu_M = rat_from_json(j.at("mu_M"));
  b.mu_N = rat_from_json(j.at("mu_N"));
  b.mu_U = rat_from_json(j.at("mu_U"));
  b.mu_MU = rat_from_json(j.at("mu_MU"));
  b.lower = rat_from_json(j.at("lower"));
  b.upper = rat_from_json(j.at("upper"));
  b.lower_effective = rat_from_json(j.at("lower_effective"));
  b.l_is_even = j.at("l_is_even").get<bool>();
  b.tainted = j.at("tainted").get<bool>();
  return b;
}

}  // namespace

Json lmn_to_json(const LmnResult& r) {
  Json j;
  j["label"] = r.spec.label;
  j["k"] = r.spec.k;
  j["pair"] = pair_to_json(r.spec.pair);
  j["lattice"] = lattice_to_json(r.L);
  j["report"] = report_to_json(r.report);
  j["bounds"] = bounds_to_json(r.bounds);
  Json ws = Json::array();
  for (const auto& w : r.witnesses) {
    Json wj;
    wj["kind"] = w.kind;
    wj["norm"] = rat_to_json(w.norm);
    wj["vector"] = vector_to_json(w.vector);
    ws.push_back(std::move(wj));
  }
  j["witnesses"] = std::move(ws);
  return j;
}

LmnResult lmn_from_json(const Json& j) {
  LmnResult r;
  r.spec.label = j.value("label", "");
  r.spec.k = j.at("k").get<int>();
  r.spec.pair = pair_from_json(j.at("pair"));
  r.L = lattice_from_json(j.at("lattice"));
  const Json& rep = j.at("report");
  r.report.rank = rep.at("rank").get<int>();
  r.report.det = rat_from_json(rep.at("det"));
  r.report.is_integral = rep.at("is_integral").get<bool>();
  r.report.is_even = rep.at("is_even").get<bool>();
  r.report.is_unimodular = rep.at("is_unimodular").get<bool>();
  r.bounds = bounds_from_json(j.at("bounds"));
  for (const Json& wj : j.at("witnesses")) {
    LmnWitness w;
    w.kind = wj.at("kind").get<std::string>();
    w.norm = rat_from_json(wj.at("norm"));
    w.vector = vector_from_json(wj.at("vector"));
    r.witnesses.push_back(std::move(w));
  }
  return r;
}

Json verdict_to_json(const OffenderVerdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  if (v.witness) j["witness"] = vector_to_json(*v.witness);
  Json cov;
  cov["w_classes_tested"] = std::to_string(v.coverage.w_classes_tested);
  cov["total_w_classes"] = std::to_string(v.coverage.total_w_classes);
  cov["mode"] = v.coverage.mode;
  cov["seed"] = std::to_string(v.coverage.seed);
  j["coverage"] = std::move(cov);
  Json viol = Json::array();
  for (const auto& s : v.lemma_violations) viol.push_back(s);
  j["lemma_violations"] = std::move(viol);
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream f(path);
  if (!f) throw Error("cannot open for writing: " + path);
  f << j.dump(1) << "\n";
  if (!f) throw Error("write failed: " + path);
}

Json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open: " + path);
  Json j;
  try {
    f >> j;
  } catch (const std::exception& e) {
    throw Error("bad JSON in " + path + ": " + e.what());
  }
  return j;
}

std::string json_fingerprint(const Json& j) {
  std::string s = j.dump();
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

}  // namespace latpol
