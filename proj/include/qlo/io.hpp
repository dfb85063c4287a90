// io.hpp — JSON schemas shared with the CLI: state specs, unitary specs and
// report serialization

#pragma once

#include "qlo/bounds.hpp"
#include "qlo/catalog.hpp"
#include "qlo/invariants.hpp"
#include "qlo/lie_optics.hpp"

#include <json.hpp>

namespace qlo {
namespace io {

using nlohmann::json;

/// Parses a state spec: {"kind": "fock" | "superposition" | "noon" |
/// "coherent" | "photon_added_coherent" | "mixed" | "blocks", ...}.
PhotonicState parse_state(const json& spec);

/// Serializes a state as an explicit sector-block decomposition
/// ({"kind":"blocks", ...}), re-readable by parse_state.
json state_to_json(const PhotonicState& state);

/// Parses a unitary spec: {"kind":"matrix","re":[[..]],"im":[[..]]},
/// {"kind":"circuit","m":..,"elements":[{"bs":{..}},{"ps":{..}}]} applied
/// left to right, or {"kind":"haar","m":..,"seed":..}.
ScatteringMatrix parse_unitary(const json& spec);

json invariant_report(const std::string& kind, const PhotonicState& state, const json& payload,
                      const std::vector<std::string>& warnings = {});
json to_json(const FeasibilityReport& report);
json to_json(const BoundReport& report);
json to_json(const SubspaceDecomposition& decomposition, bool include_bases);

}  // namespace io
}  // namespace qlo
