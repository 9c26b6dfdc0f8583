#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <unordered_map>
#include <vector>

#include "twinet/graph.hpp"

namespace twinet {

/// Per-vertex annotations attached to graph exports. Importance follows the
/// ranking metric (zero for non-user vertices); communities are optional.
struct ExportAnnotations {
    std::unordered_map<VertexId, std::uint32_t> communities;
    bool size_by_importance = false;
    int inorm_divisor = 2;
};

/// GEXF 1.2draft: directed graph, native edge weights, node attributes kind,
/// community and importance.
void write_gexf(std::ostream& out, const InteractionGraph& g, const ExportAnnotations& ann);

/// Graphviz DOT: penwidth proportional to edge weight (baseline 1.0 at the
/// minimum weight); node width linearly scaled from importance into
/// [0.1, 2.0] when size_by_importance is set; communities color the nodes.
void write_dot(std::ostream& out, const InteractionGraph& g, const ExportAnnotations& ann);

/// Edge list CSV: src_key,dst_key,kind,weight.
void write_edge_csv(std::ostream& out, const InteractionGraph& g);

/// Reads a `vertex_key,kind,community` CSV and resolves rows against the
/// graph. Throws InputError on unknown vertices or malformed rows.
std::unordered_map<VertexId, std::uint32_t> load_communities_csv(std::istream& in,
                                                                 const InteractionGraph& g);

/// Writes the assignment table consumed by load_communities_csv.
void write_communities_csv(std::ostream& out, const InteractionGraph& g,
                           const std::vector<std::uint32_t>& labels);

} // namespace twinet
