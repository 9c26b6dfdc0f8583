#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "twinet/graph.hpp"
#include "twinet/undirected.hpp"

namespace twinet {

/// Vertex -> community assignment. Labels are dense non-negative integers;
/// after canonicalize() they are numbered by first appearance in vertex order.
struct Partition {
    std::vector<std::uint32_t> labels;
    std::uint32_t community_count = 0;

    static Partition singletons(std::size_t n);
    static Partition single_block(std::size_t n);

    /// Renumbers labels by first appearance in vertex-id order and drops empty
    /// label slots. Modularity is invariant under this relabeling.
    void canonicalize();

    /// Community sizes in descending order.
    std::vector<std::size_t> sizes() const;
};

/// Weighted modularity of the partition, computed per community as
/// sum_c [ in_c/(2m) - (tot_c/(2m))^2 ]. Throws AnalysisError when the graph
/// has no edges (m = 0) and std::invalid_argument when the partition does not
/// cover the graph.
double modularity(const UndirectedGraph& g, const Partition& p);

/// Running community aggregates (total edge weight m, per-vertex strengths,
/// per-community internal weight and total strength) that make single-vertex
/// moves O(degree). Owned by one solver thread at a time.
class ModularityContext {
public:
    ModularityContext(const UndirectedGraph& g, Partition p);

    double q() const;

    /// Modularity change if v moved from its current community to `to`.
    double move_gain(VertexId v, std::uint32_t to) const;

    /// Applies the move and updates the aggregates.
    void apply_move(VertexId v, std::uint32_t to);

    std::uint32_t label(VertexId v) const { return partition_.labels[v]; }
    std::uint32_t label_count() const { return partition_.community_count; }
    const Partition& partition() const { return partition_; }
    const UndirectedGraph& graph() const { return *graph_; }
    double total_weight() const { return m_; }
    double community_strength(std::uint32_t c) const { return comm_tot_[c]; }

    /// Weight from v to each adjacent community, plus the weight to v's own
    /// community (always reported, even when zero). Results are ordered by
    /// ascending community label.
    void community_weights(VertexId v,
                           std::vector<std::pair<std::uint32_t, double>>& out) const;

private:
    double weight_to_community(VertexId v, std::uint32_t c) const;

    const UndirectedGraph* graph_;
    Partition partition_;
    std::vector<double> comm_in_;  // sum over pairs inside c, each edge twice
    std::vector<double> comm_tot_; // sum of member strengths
    double m_;
};

/// ΔQ for moving v from `from` to `to`; `from` must be v's current label.
/// Matches a full recomputation of Q within 1e-12.
double modularity_delta(const ModularityContext& ctx, VertexId v, std::uint32_t from,
                        std::uint32_t to);

/// Decomposition of the follower/friend-weighted vertex importance:
/// importance = k * inorm with inorm = (followers/max_followers +
/// friends/max_friends) / divisor.
struct ImportanceScore {
    VertexId vertex = kNoVertex;
    std::uint64_t k = 0; // unweighted total degree in the full graph
    double followers_norm = 0.0;
    double friends_norm = 0.0;
    double inorm = 0.0;
    double importance = 0.0;
};

/// Scores one user against the graph-wide follower/friend maxima. The divisor
/// selects between the normalized form (2) and the compatibility form (1);
/// both orderings are identical. Throws AnalysisError when a maximum is zero.
ImportanceScore importance(const UserProfile& profile, VertexId vertex, std::uint64_t k,
                           std::uint64_t max_followers, std::uint64_t max_friends,
                           int inorm_divisor);

enum class RankBy { Degree, Importance };

struct RankedUser {
    std::size_t rank = 0; // 1-based
    VertexId vertex = kNoVertex;
    std::string screen_name;
    std::uint64_t followers = 0;
    std::uint64_t friends = 0;
    std::uint64_t degree = 0; // unweighted total
    double importance = 0.0;
};

/// Users ordered by the chosen key descending, ties by ascending vertex id;
/// at most `top` rows. Non-user vertices never appear. Follower/friend maxima
/// are taken from the graph itself; when every user has zero followers (or
/// friends) that term contributes zero.
std::vector<RankedUser> rank_users(const InteractionGraph& g, RankBy by, std::size_t top,
                                   int inorm_divisor);

/// CSV emission for ranking tables: header
/// rank,screen_name,followers,friends,degree,importance with importance at six
/// decimal places.
void write_ranking_csv(std::ostream& out, const std::vector<RankedUser>& rows);

/// The connected core of the most important users: takes the `top` highest
/// importance users of the user projection, induces the subgraph on them and
/// returns its largest weakly connected component.
InteractionGraph importance_core(const InteractionGraph& g, std::size_t top,
                                 int inorm_divisor = 2);

} // namespace twinet
