#include "twinet/undirected.hpp"

#include <algorithm>
#include <stdexcept>

namespace twinet {

UndirectedGraph::UndirectedGraph(std::size_t n) : adjacency_(n), strength_(n, 0.0) {}

void UndirectedGraph::add_edge(VertexId u, VertexId v, double weight) {
    if (u >= size() || v >= size()) {
        throw std::invalid_argument("undirected edge endpoint out of range");
    }
    if (u == v) {
        throw std::invalid_argument("self-loops are not representable in the undirected view");
    }
    if (weight <= 0.0) {
        throw std::invalid_argument("edge weight must be positive");
    }

    VertexId lo = std::min(u, v);
    VertexId hi = std::max(u, v);
    std::uint64_t packed = (static_cast<std::uint64_t>(lo) << 32) | hi;
    auto it = pair_index_.find(packed);
    if (it != pair_index_.end()) {
        edges_[it->second].weight += weight;
    } else {
        std::uint32_t idx = static_cast<std::uint32_t>(edges_.size());
        edges_.push_back(Stored{lo, hi, weight});
        adjacency_[lo].push_back(Arc{hi, idx});
        adjacency_[hi].push_back(Arc{lo, idx});
        pair_index_.emplace(packed, idx);
    }
    strength_[u] += weight;
    strength_[v] += weight;
    total_weight_ += weight;
}

UndirectedGraph UndirectedGraph::collapse(const InteractionGraph& g) {
    UndirectedGraph out(g.vertex_count());
    for (const Edge& e : g.edges()) {
        if (e.src == e.dst) {
            continue;
        }
        out.add_edge(e.src, e.dst, static_cast<double>(e.weight));
    }
    return out;
}

} // namespace twinet
