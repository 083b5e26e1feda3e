#pragma once

#include <json.hpp>

#include "latpol/enumerate.hpp"
#include "latpol/lattice.hpp"
#include "latpol/lmn.hpp"
#include "latpol/offender.hpp"
#include "latpol/polarization.hpp"

namespace latpol {

// All file numerics are exact decimal strings ("p/q" rationals, counts as
// decimal strings). ordered_json keeps field order stable so identical runs
// produce byte-identical artifacts.
using Json = nlohmann::ordered_json;

Json rat_to_json(const Rat& r);
Rat rat_from_json(const Json& j);

Json matrix_to_json(const RatMat& m);
RatMat matrix_from_json(const Json& j);

Json vector_to_json(const RatVec& v);
RatVec vector_from_json(const Json& j);

Json lattice_to_json(const Lattice& l);
Lattice lattice_from_json(const Json& j);

Json report_to_json(const LatticeReport& r);

// counts as decimal strings, norms as exact "p/q"; wall time is
// deliberately not serialized so identical runs give identical bytes
Json enumeration_to_json(const EnumerationReport& r);

Json pair_to_json(const PolarizationPair& p);
PolarizationPair pair_from_json(const Json& j);

Json root_system_to_json(const RootSystemId& id);

Json bounds_to_json(const MuBounds& b);

Json lmn_to_json(const LmnResult& r);
LmnResult lmn_from_json(const Json& j);

Json verdict_to_json(const OffenderVerdict& v);

void write_json_file(const std::string& path, const Json& j);
Json read_json_file(const std::string& path);

// FNV-1a over the serialized text; used to fingerprint checkpoint owners.
std::string json_fingerprint(const Json& j);

}  // namespace latpol
