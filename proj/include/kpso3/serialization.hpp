#pragma once

#include "kpso3/orbitspace.hpp"
#include "kpso3/reachable.hpp"
#include "kpso3/synthesis.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

/// JSON and CSV wire formats for the library types.
namespace kpso3 {

nlohmann::json to_json(const OrbitPoint& p);
OrbitPoint orbit_point_from_json(const nlohmann::json& j);

/// {"T_min", "alpha", "A_k": [a,b,c], "A_p": [a,b,c],
///  "conjugator": {"angle", "component"}}
nlohmann::json to_json(const SynthesisResult& r);

/// Parse a 3x3 matrix from either a JSON 3x3 array or three whitespace
/// separated rows of decimals; validates the rotation invariants.
GroupElement read_group_element(std::istream& in);
GroupElement read_group_element_file(const std::string& path);

/// CSV rows "alpha,rho,theta" for a frontier curve.
void write_frontier_csv(std::ostream& out, const FrontierCurve& c);

/// Fixed-precision decimal formatting used by all CSV output, so identical
/// data produces byte-identical files.
std::string format_number(double v);

}  // namespace kpso3
