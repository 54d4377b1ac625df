#pragma once

#include <string>

#include <json.hpp>

#include "cayley3/cayley.hpp"
#include "cayley3/constructions.hpp"
#include "cayley3/rotation_system.hpp"
#include "cayley3/two_complex.hpp"

namespace cayley3 {

/// Complex JSON: {"vertices":[...], "edges":[{"id","ends"}...],
/// "faces":[{"id","walk":[v,e,v,e,...]}...]}. Face walks are emitted at their
/// lexicographically minimal rotation so output is byte-stable; loop edges in
/// a walk parse with the forward direction. A truncated build adds
/// "incomplete_edges".
nlohmann::json complex_to_json(const TwoComplex& x, const std::set<Id>* incomplete_edges = nullptr);
TwoComplex complex_from_json(const nlohmann::json& j, std::set<Id>* incomplete_edges = nullptr);

/// Rotation JSON: {"rotations": {"e<id>+": [[face, occ], ...], "e<id>-": ...}};
/// both directions present, reversal pairs validated on load.
nlohmann::json rotation_to_json(const RotationSystem& r);
RotationSystem rotation_from_json(const nlohmann::json& j, const TwoComplex& x);

/// Action JSON: {"generators":[{"name","vertices":[[a,b]...],"edges":...,
/// "faces":...}...], "relators": ["a^2", ...]}.
nlohmann::json action_to_json(const CellularAction& a);
CellularAction action_from_json(const nlohmann::json& j);

/// Plane-graph JSON: {"vertex_count", "edges":[[u,v]...],
/// "rotations":[[[edge, side]...] per vertex]}.
nlohmann::json plane_graph_to_json(const PlaneGraph& g);
PlaneGraph plane_graph_from_json(const nlohmann::json& j);

nlohmann::json slice_pattern_to_json(const SlicePattern& p);

std::string dump_canonical(const nlohmann::json& j);
nlohmann::json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// FNV-1a 64-bit digest, for the inputs-digest field of reports.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace cayley3
