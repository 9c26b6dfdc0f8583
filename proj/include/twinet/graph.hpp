#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace twinet {

using VertexId = std::uint32_t;
inline constexpr VertexId kNoVertex = 0xFFFFFFFFu;

enum class VertexKind : std::uint8_t { User = 0, Tweet, Hashtag, Link, Media };
inline constexpr std::size_t kVertexKindCount = 5;

enum class EdgeKind : std::uint8_t {
    Posted = 0,  // User -> Tweet
    Mentions,    // Tweet -> User
    RetweetOf,   // Tweet -> Tweet
    ReplyTo,     // Tweet -> Tweet
    QuoteOf,     // Tweet -> Tweet
    HasHashtag,  // Tweet -> Hashtag
    HasLink,     // Tweet -> Link
    HasMedia,    // Tweet -> Media
    Interacts,   // User -> User, projection graphs only
};
inline constexpr std::size_t kEdgeKindCount = 9;

std::string_view to_string(VertexKind kind);
std::string_view to_string(EdgeKind kind);
std::optional<VertexKind> vertex_kind_from(std::string_view name);
std::optional<EdgeKind> edge_kind_from(std::string_view name);

struct UserProfile {
    std::string screen_name; // lowercase, no leading '@'
    std::string display_name;
    std::uint64_t followers_count = 0;
    std::uint64_t friends_count = 0;
    bool verified = false;
    std::string location;
    bool is_seed = false;
};

struct Edge {
    VertexId src = kNoVertex;
    VertexId dst = kNoVertex;
    EdgeKind kind = EdgeKind::Posted;
    std::uint64_t weight = 0; // repetition count, >= 1
};

enum class DegreeMode { In, Out, Total };

/// Directed weighted multigraph over typed vertices. Vertices are deduplicated
/// by (kind, normalized key); parallel edges of one kind collapse into a single
/// edge whose weight accumulates. Construction is single-writer; afterwards the
/// graph is immutable and safe for concurrent readers.
class InteractionGraph {
public:
    /// Registers a vertex, or returns the existing id when the (kind, key)
    /// pair is already present. Keys are normalized: handles lose a leading
    /// '@' and are lowercased, hashtags lose a leading '#' and are lowercased,
    /// all keys are whitespace-trimmed. A profile may only accompany User
    /// vertices; repeated profiles merge (counts take the maximum observed,
    /// empty text fields fill in, verified/is_seed are sticky).
    VertexId add_vertex(VertexKind kind, std::string_view key,
                        const std::optional<UserProfile>& profile = std::nullopt);

    /// Adds `count` repetitions of the (src, dst, kind) edge and returns the
    /// accumulated weight. Endpoint kinds must be legal for the edge kind;
    /// Interacts edges may not be self-loops.
    std::uint64_t add_edge(VertexId src, VertexId dst, EdgeKind kind, std::uint64_t count = 1);

    std::size_t vertex_count() const { return kinds_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t kind_count(VertexKind kind) const { return kind_counts_[static_cast<std::size_t>(kind)]; }

    VertexKind kind(VertexId v) const;
    const std::string& key(VertexId v) const;
    const UserProfile* profile(VertexId v) const; // nullptr unless a User with a profile
    bool is_user(VertexId v) const;

    /// Looks up a vertex by (kind, key); the key is normalized first.
    /// Returns kNoVertex when absent.
    VertexId find(VertexKind kind, std::string_view key) const;

    /// In/out/total degree; weighted sums edge weights, unweighted counts
    /// distinct edges. Total is the sum of in and out.
    std::uint64_t degree(VertexId v, DegreeMode mode, bool weighted) const;

    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(std::uint32_t index) const { return edges_[index]; }
    std::span<const std::uint32_t> out_edge_indices(VertexId v) const;
    std::span<const std::uint32_t> in_edge_indices(VertexId v) const;

    bool has_edge(VertexId src, VertexId dst, EdgeKind kind) const;

    void set_capture_window(std::string first, std::string last);
    const std::pair<std::string, std::string>& capture_window() const { return capture_window_; }

    static std::string normalize_key(VertexKind kind, std::string_view raw);

private:
    void check_vertex(VertexId v) const;
    void merge_profile(VertexId v, const UserProfile& incoming);

    std::vector<VertexKind> kinds_;
    std::vector<std::string> keys_;
    std::vector<std::int32_t> profile_slot_; // -1 when the vertex has no profile
    std::vector<UserProfile> profiles_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::uint32_t>> out_;
    std::vector<std::vector<std::uint32_t>> in_;
    std::array<std::unordered_map<std::string, VertexId>, kVertexKindCount> key_index_;
    std::array<std::unordered_map<std::uint64_t, std::uint32_t>, kEdgeKindCount> edge_index_;
    std::array<std::size_t, kVertexKindCount> kind_counts_{};
    std::pair<std::string, std::string> capture_window_;
};

/// Partition of the vertex set into components reachable when edge direction
/// is ignored. Components are ordered by size descending, ties by smallest
/// contained id; members are sorted ascending.
std::vector<std::vector<VertexId>> weakly_connected_components(const InteractionGraph& g);

/// Subgraph on exactly `keep` plus every edge with both endpoints kept.
/// Weights are preserved; vertex ids are reassigned densely in ascending
/// source-id order. Throws on ids not present in g.
InteractionGraph induced_subgraph(const InteractionGraph& g, std::span<const VertexId> keep);

/// User-to-user information-flow graph: an Interacts edge u -> v accumulates
/// the weight of every mention by u's tweets of v and of every retweet, reply
/// or quote by u of a tweet posted by v. Self-interactions are dropped. The
/// result keeps users with at least one projected edge plus all seed users.
InteractionGraph user_projection(const InteractionGraph& g);

} // namespace twinet
