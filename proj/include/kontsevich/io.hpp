#pragma once

// JSON reading and writing for braids, graphs, scenes, diagrams and reports.
// Malformed input raises ParseError; well-formed input that violates a
// geometric invariant raises ValidationError.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "kontsevich/braid.hpp"
#include "kontsevich/closure.hpp"
#include "kontsevich/diagram.hpp"
#include "kontsevich/dynamics.hpp"
#include "kontsevich/graph.hpp"
#include "kontsevich/kz.hpp"

namespace kontsevich::io {

using Json = nlohmann::json;

/// Reads a whole file; throws ParseError when it cannot be opened.
std::string read_file(const std::string& path);
Json parse_json(const std::string& text, const std::string& what = "input");
Json load_json(const std::string& path);

/// Writes through a temporary file in the same directory, then renames.
void write_atomic(const std::string& path, const std::string& content);

std::uint64_t fnv1a(const std::string& bytes);
std::string hex64(std::uint64_t h);

/// {"n","word","steps_per_crossing"[,"bulge"]} or {"n","strands":[[[t,re,im],...],...]}.
GeometricBraid braid_from_json(const Json& j);
/// Always the explicit strand form.
Json braid_to_json(const GeometricBraid& b);

/// {"arcs":[{"points":[[x,y,t(,extremum)],...],"closed":bool}],"vertices":[[[arc,0|1],...],...]}.
/// When no point carries an extremum flag the flags are computed.
EmbeddedGraph graph_from_json(const Json& j);
Json graph_to_json(const EmbeddedGraph& g);

/// [[tau,x,y,t],...]
Path path_from_json(const Json& j);
Json path_to_json(const Path& p);

/// {"graphs":[...],"plans":[{"alpha":...,"beta":...,"spin":s}]}
Scene scene_from_json(const Json& j);
Json scene_to_json(const Scene& s);

/// [[sigma,tau],...] or, per graph, [[[sigma,tau],[sigma,tau],...],...].
std::vector<Sample> samples_from_json(const Json& j);
Json sample_to_json(const Sample& s);

/// {"skeleton":{"kind","count"},"chords":[[[c,p],[c',p']],...]}
ChordDiagram diagram_from_json(const Json& j);
Json diagram_to_json(const ChordDiagram& d);

Json complex_to_json(Complex z);
Json table_to_json(const CoefficientTable& t);
Json closed_to_json(const ClosedZ& z);
Json report_to_json(const ContactReport& r);
Json component_to_json(const ContactComponent& c);
Json identifold_to_json(const Identifold& id);
Json family_entry_to_json(const FamilyEntry& e);

}  // namespace kontsevich::io
