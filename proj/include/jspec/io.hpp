#pragma once

// JSON encodings of bodies, exact values and reports.

#include <json.hpp>

#include "jspec/classification.hpp"
#include "jspec/geometry.hpp"
#include "jspec/operational.hpp"
#include "jspec/symmetry.hpp"

namespace jspec {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

/// Exact values travel as strings ("1/2+1/2*sqrt5"); integers are also accepted.
json to_json(const Exact& x);
Exact exact_from_json(const json& j);
json to_json(const ExactVector& v);
ExactVector exact_vector_from_json(const json& j);

/// {"type": "polytope", "vertices": [["1","0"], ...], "name": ...}
/// {"type": "polytope", "name": "pentagon"}          (catalog)
/// {"type": "ball", "n": 3}
/// {"type": "eja", "family": "herm_c", "m": 3}      ("n" for spin)
/// Throws InvalidInput on schema violations.
ConvexBody body_from_json(const json& j);
json body_to_json(const ConvexBody& b);
AlgebraDescriptor algebra_from_json(const json& j);
json algebra_to_json(const AlgebraDescriptor& a);

json to_json(const AffineFunctional& f);
json to_json(const PolytopeSpectrality& s);
json to_json(const StrongSymmetryReport& r);
json to_json(const RegularityReport& r);
json to_json(const BijectionReport& r);
json to_json(const EjaStrongSymmetryReport& r);
json to_json(const MrTableRow& r);
json to_json(const EvaluatedRow& r);
json to_json(const TableConsistencyReport& r);
json to_json(const TheoremReport& r);
json to_json(const ConverseReport& r);
json to_json(const EjaElement& x);

/// Witness payloads that `recheck` accepts: {"kind": "uncovered_point", "point": [...]}
/// or {"kind": "orbit_pair", "frames": [[...], [...]]}.
json spectral_witness(const ExactVector& point);
json orbit_witness(const Tuple& a, const Tuple& b);
/// Re-verifies a witness against its body; throws InvalidInput for unknown kinds.
bool recheck_witness(const Polytope& p, const json& witness, int cap = 12);

}  // namespace jspec
