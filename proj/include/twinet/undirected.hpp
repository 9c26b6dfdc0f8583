#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "twinet/graph.hpp"

namespace twinet {

/// Undirected weighted simple graph, the domain of modularity. Vertices are
/// dense 0..n-1; parallel insertions of the same pair accumulate weight;
/// self-loops are rejected (the directed collapse drops them).
class UndirectedGraph {
public:
    struct Arc {
        VertexId neighbor;
        std::uint32_t edge; // index into the shared edge table
    };

    explicit UndirectedGraph(std::size_t n = 0);

    void add_edge(VertexId u, VertexId v, double weight);

    std::size_t size() const { return adjacency_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    double total_weight() const { return total_weight_; } // m
    double strength(VertexId v) const { return strength_[v]; }
    std::size_t degree(VertexId v) const { return adjacency_[v].size(); }

    std::span<const Arc> arcs(VertexId v) const { return adjacency_[v]; }
    double arc_weight(const Arc& a) const { return edges_[a.edge].weight; }

    template <class F>
    void for_neighbors(VertexId v, F&& f) const {
        for (const Arc& a : adjacency_[v]) {
            f(a.neighbor, edges_[a.edge].weight);
        }
    }

    /// Sums antiparallel directed edges into one undirected weight per vertex
    /// pair; directed self-loops are dropped. Vertex ids carry over 1:1.
    static UndirectedGraph collapse(const InteractionGraph& g);

private:
    struct Stored {
        VertexId a;
        VertexId b;
        double weight;
    };

    std::vector<Stored> edges_;
    std::vector<std::vector<Arc>> adjacency_;
    std::vector<double> strength_;
    std::unordered_map<std::uint64_t, std::uint32_t> pair_index_;
    double total_weight_ = 0.0;
};

} // namespace twinet
