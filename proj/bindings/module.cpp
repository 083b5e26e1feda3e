#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "latpol/json_io.hpp"

namespace py = pybind11;
using namespace latpol;

namespace {

MuInputs certified_mus(const PolarizationPair& pair) {
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

py::dict report_dict(const LatticeReport& r) {
  py::dict d;
  d["rank"] = r.rank;
  d["det"] = to_string(r.det);
  d["is_integral"] = r.is_integral;
  d["is_even"] = r.is_even;
  d["is_unimodular"] = r.is_unimodular;
  return d;
}

EnumOptions options_from(bool collect, bool force_rank) {
  EnumOptions o;
  o.collect = collect;
  o.force_rank = force_rank;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact lattice toolkit: polarizations, L(M,N,k), minimum norms";

  py::register_exception<PolicyRefusal>(m, "PolicyRefusal");

  py::class_<Lattice>(m, "Lattice")
      .def_property_readonly("rank", &Lattice::rank)
      .def_property_readonly("ambient_dim", &Lattice::ambient_dim)
      .def_property_readonly("label", &Lattice::label)
      .def("to_json", [](const Lattice& l) { return lattice_to_json(l).dump(); })
      .def_static("from_json",
                  [](const std::string& s) { return lattice_from_json(Json::parse(s)); });

  py::class_<PolarizationPair>(m, "PolarizationPair")
      .def_property_readonly("even_polarization",
                             [](const PolarizationPair& p) { return p.even_polarization; })
      .def_property_readonly("parent", [](const PolarizationPair& p) { return p.parent; })
      .def("half_m", [](const PolarizationPair& p) { return half_x(p); })
      .def("half_n", [](const PolarizationPair& p) { return half_y(p); })
      .def("verify",
           [](const PolarizationPair& p) {
             PolarizationCheck c = verify_polarization(p);
             py::dict d;
             d["ok"] = c.ok;
             d["even_pair"] = c.even_pair;
             d["failures"] = c.failures;
             return d;
           })
      .def("to_json", [](const PolarizationPair& p) { return pair_to_json(p).dump(); })
      .def_static("from_json",
                  [](const std::string& s) { return pair_from_json(Json::parse(s)); });

  py::class_<LmnResult>(m, "LmnResult")
      .def_property_readonly("lattice", [](const LmnResult& r) { return r.L; })
      .def_property_readonly("k", [](const LmnResult& r) { return r.spec.k; })
      .def("report", [](const LmnResult& r) { return report_dict(r.report); })
      .def("bounds",
           [](const LmnResult& r) {
             py::dict d;
             d["lower"] = to_string(r.bounds.lower);
             d["upper"] = to_string(r.bounds.upper);
             d["lower_effective"] = to_string(r.bounds.lower_effective);
             d["tainted"] = r.bounds.tainted;
             return d;
           })
      .def("witnesses",
           [](const LmnResult& r) {
             py::list out;
             for (const auto& w : r.witnesses) {
               py::dict d;
               d["kind"] = w.kind;
               d["norm"] = to_string(w.norm);
               out.append(d);
             }
             return out;
           })
      .def("to_json", [](const LmnResult& r) { return lmn_to_json(r).dump(); })
      .def_static("from_json",
                  [](const std::string& s) { return lmn_from_json(Json::parse(s)); });

  m.def("make_standard", &make_standard, py::arg("name"),
        "standard lattices: Zn, Dn, E8, E8_cubed, BW32, Leech_turyn");

  m.def("classify", [](const Lattice& l) { return report_dict(classify(l)); });

  m.def(
      "enumerate_short",
      [](const Lattice& l, const std::string& bound, bool collect, bool force_rank) {
        EnumerationReport r = enumerate_short(l, parse_rat(bound), options_from(collect, force_rank));
        py::dict d;
        d["exhaustive"] = r.exhaustive;
        py::dict counts;
        for (const auto& [norm, count] : r.counts_by_norm)
          counts[py::str(to_string(norm))] = count;
        d["counts_by_norm"] = counts;
        d["nodes"] = r.nodes;
        return d;
      },
      py::arg("lattice"), py::arg("bound"), py::arg("collect") = false,
      py::arg("force_rank") = false);

  m.def("min_norm", [](const Lattice& l) {
    MinNormResult r = min_norm(l);
    return py::make_tuple(to_string(r.mu), r.certified);
  });

  m.def("identify_root_system", [](const Lattice& l) {
    RootSystemId id = identify_root_system(l);
    py::list comps;
    for (const auto& c : id.components)
      comps.append(py::make_tuple(std::string(1, c.type), c.rank, c.root_count));
    py::dict d;
    d["components"] = comps;
    d["total_roots"] = id.total_roots;
    d["ambiguous"] = id.ambiguous;
    return d;
  });

  m.def("standard_pair", &standard_pair, py::arg("name"),
        "pinned polarizations: E8, E8_cubed, Leech, Leech_Leech, BW32");

  m.def(
      "build_lmn",
      [](const PolarizationPair& pair, int k, const std::string& label) {
        LmnSpec spec;
        spec.pair = pair;
        spec.k = k;
        spec.label = label;
        return build_L(spec, certified_mus(pair));
      },
      py::arg("pair"), py::arg("k"), py::arg("label") = "L");

  m.def("preset", [](const std::string& name) { return preset(name).pair; });

  m.def(
      "offender_search_sampled",
      [](const LmnResult& r, unsigned long long count, uint64_t seed, bool strict) {
        OffenderContext ctx = make_offender_context(r, strict);
        SearchMode mode;
        mode.exhaustive = false;
        mode.sample_count = count;
        mode.seed = seed;
        OffenderVerdict v = offender_search(ctx, mode);
        return verdict_to_json(v).dump();
      },
      py::arg("lmn"), py::arg("count"), py::arg("seed"), py::arg("strict") = false);
}
