#include "twinet/graph.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace twinet {

namespace {

const std::array<std::string_view, kVertexKindCount> kVertexKindNames = {
    "User", "Tweet", "Hashtag", "Link", "Media"};

const std::array<std::string_view, kEdgeKindCount> kEdgeKindNames = {
    "Posted",     "Mentions", "RetweetOf", "ReplyTo",  "QuoteOf",
    "HasHashtag", "HasLink",  "HasMedia",  "Interacts"};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

std::uint64_t pack_pair(VertexId src, VertexId dst) {
    return (static_cast<std::uint64_t>(src) << 32) | dst;
}

bool endpoints_legal(EdgeKind kind, VertexKind src, VertexKind dst) {
    switch (kind) {
    case EdgeKind::Posted:
        return src == VertexKind::User && dst == VertexKind::Tweet;
    case EdgeKind::Mentions:
        return src == VertexKind::Tweet && dst == VertexKind::User;
    case EdgeKind::RetweetOf:
    case EdgeKind::ReplyTo:
    case EdgeKind::QuoteOf:
        return src == VertexKind::Tweet && dst == VertexKind::Tweet;
    case EdgeKind::HasHashtag:
        return src == VertexKind::Tweet && dst == VertexKind::Hashtag;
    case EdgeKind::HasLink:
        return src == VertexKind::Tweet && dst == VertexKind::Link;
    case EdgeKind::HasMedia:
        return src == VertexKind::Tweet && dst == VertexKind::Media;
    case EdgeKind::Interacts:
        return src == VertexKind::User && dst == VertexKind::User;
    }
    return false;
}

} // namespace

std::string_view to_string(VertexKind kind) {
    return kVertexKindNames[static_cast<std::size_t>(kind)];
}

std::string_view to_string(EdgeKind kind) {
    return kEdgeKindNames[static_cast<std::size_t>(kind)];
}

std::optional<VertexKind> vertex_kind_from(std::string_view name) {
    for (std::size_t i = 0; i < kVertexKindCount; ++i) {
        if (kVertexKindNames[i] == name) {
            return static_cast<VertexKind>(i);
        }
    }
    return std::nullopt;
}

std::optional<EdgeKind> edge_kind_from(std::string_view name) {
    for (std::size_t i = 0; i < kEdgeKindCount; ++i) {
        if (kEdgeKindNames[i] == name) {
            return static_cast<EdgeKind>(i);
        }
    }
    return std::nullopt;
}

std::string InteractionGraph::normalize_key(VertexKind kind, std::string_view raw) {
    std::string_view trimmed = trim(raw);
    switch (kind) {
    case VertexKind::User:
        if (!trimmed.empty() && trimmed.front() == '@') {
            trimmed.remove_prefix(1);
        }
        return ascii_lower(trimmed);
    case VertexKind::Hashtag:
        if (!trimmed.empty() && trimmed.front() == '#') {
            trimmed.remove_prefix(1);
        }
        return ascii_lower(trimmed);
    default:
        return std::string(trimmed);
    }
}

VertexId InteractionGraph::add_vertex(VertexKind kind, std::string_view key,
                                      const std::optional<UserProfile>& profile) {
    if (profile && kind != VertexKind::User) {
        throw std::invalid_argument("profile supplied for a non-User vertex");
    }
    std::string normalized = normalize_key(kind, key);
    if (normalized.empty()) {
        throw std::invalid_argument("empty vertex key");
    }

    auto& index = key_index_[static_cast<std::size_t>(kind)];
    auto it = index.find(normalized);
    if (it != index.end()) {
        if (profile) {
            merge_profile(it->second, *profile);
        }
        return it->second;
    }

    VertexId id = static_cast<VertexId>(kinds_.size());
    kinds_.push_back(kind);
    keys_.push_back(normalized);
    out_.emplace_back();
    in_.emplace_back();
    kind_counts_[static_cast<std::size_t>(kind)] += 1;
    if (profile) {
        profile_slot_.push_back(static_cast<std::int32_t>(profiles_.size()));
        profiles_.push_back(*profile);
        profiles_.back().screen_name = normalized;
    } else {
        profile_slot_.push_back(-1);
    }
    index.emplace(std::move(normalized), id);
    return id;
}

void InteractionGraph::merge_profile(VertexId v, const UserProfile& incoming) {
    std::int32_t slot = profile_slot_[v];
    if (slot < 0) {
        profile_slot_[v] = static_cast<std::int32_t>(profiles_.size());
        profiles_.push_back(incoming);
        profiles_.back().screen_name = keys_[v];
        return;
    }
    UserProfile& p = profiles_[static_cast<std::size_t>(slot)];
    p.followers_count = std::max(p.followers_count, incoming.followers_count);
    p.friends_count = std::max(p.friends_count, incoming.friends_count);
    if (p.display_name.empty()) {
        p.display_name = incoming.display_name;
    }
    if (p.location.empty()) {
        p.location = incoming.location;
    }
    p.verified = p.verified || incoming.verified;
    p.is_seed = p.is_seed || incoming.is_seed;
}

std::uint64_t InteractionGraph::add_edge(VertexId src, VertexId dst, EdgeKind kind,
                                         std::uint64_t count) {
    check_vertex(src);
    check_vertex(dst);
    if (count == 0) {
        throw std::invalid_argument("edge count must be positive");
    }
    if (!endpoints_legal(kind, kinds_[src], kinds_[dst])) {
        throw std::invalid_argument(std::string("illegal endpoints for edge kind ") +
                                    std::string(to_string(kind)) + ": " +
                                    std::string(to_string(kinds_[src])) + " -> " +
                                    std::string(to_string(kinds_[dst])));
    }
    if (kind == EdgeKind::Interacts && src == dst) {
        throw std::invalid_argument("self-interaction edges are not allowed");
    }

    auto& index = edge_index_[static_cast<std::size_t>(kind)];
    std::uint64_t packed = pack_pair(src, dst);
    auto it = index.find(packed);
    if (it != index.end()) {
        edges_[it->second].weight += count;
        return edges_[it->second].weight;
    }
    std::uint32_t edge_idx = static_cast<std::uint32_t>(edges_.size());
    edges_.push_back(Edge{src, dst, kind, count});
    out_[src].push_back(edge_idx);
    in_[dst].push_back(edge_idx);
    index.emplace(packed, edge_idx);
    return count;
}

VertexKind InteractionGraph::kind(VertexId v) const {
    check_vertex(v);
    return kinds_[v];
}

const std::string& InteractionGraph::key(VertexId v) const {
    check_vertex(v);
    return keys_[v];
}

const UserProfile* InteractionGraph::profile(VertexId v) const {
    check_vertex(v);
    std::int32_t slot = profile_slot_[v];
    return slot < 0 ? nullptr : &profiles_[static_cast<std::size_t>(slot)];
}

bool InteractionGraph::is_user(VertexId v) const {
    check_vertex(v);
    return kinds_[v] == VertexKind::User;
}

VertexId InteractionGraph::find(VertexKind kind, std::string_view key) const {
    std::string normalized = normalize_key(kind, key);
    const auto& index = key_index_[static_cast<std::size_t>(kind)];
    auto it = index.find(normalized);
    return it == index.end() ? kNoVertex : it->second;
}

std::uint64_t InteractionGraph::degree(VertexId v, DegreeMode mode, bool weighted) const {
    check_vertex(v);
    auto sum = [&](const std::vector<std::uint32_t>& list) -> std::uint64_t {
        if (!weighted) {
            return list.size();
        }
        std::uint64_t total = 0;
        for (std::uint32_t e : list) {
            total += edges_[e].weight;
        }
        return total;
    };
    switch (mode) {
    case DegreeMode::In:
        return sum(in_[v]);
    case DegreeMode::Out:
        return sum(out_[v]);
    case DegreeMode::Total:
        return sum(in_[v]) + sum(out_[v]);
    }
    return 0;
}

std::span<const std::uint32_t> InteractionGraph::out_edge_indices(VertexId v) const {
    check_vertex(v);
    return out_[v];
}

std::span<const std::uint32_t> InteractionGraph::in_edge_indices(VertexId v) const {
    check_vertex(v);
    return in_[v];
}

bool InteractionGraph::has_edge(VertexId src, VertexId dst, EdgeKind kind) const {
    check_vertex(src);
    check_vertex(dst);
    const auto& index = edge_index_[static_cast<std::size_t>(kind)];
    return index.find(pack_pair(src, dst)) != index.end();
}

void InteractionGraph::set_capture_window(std::string first, std::string last) {
    capture_window_ = {std::move(first), std::move(last)};
}

void InteractionGraph::check_vertex(VertexId v) const {
    if (v >= kinds_.size()) {
        throw std::invalid_argument("unknown vertex id " + std::to_string(v));
    }
}

std::vector<std::vector<VertexId>> weakly_connected_components(const InteractionGraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<VertexId> component(n, kNoVertex);
    std::vector<VertexId> stack;
    VertexId next_component = 0;

    for (VertexId start = 0; start < n; ++start) {
        if (component[start] != kNoVertex) {
            continue;
        }
        component[start] = next_component;
        stack.push_back(start);
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (std::uint32_t e : g.out_edge_indices(v)) {
                VertexId w = g.edge(e).dst;
                if (component[w] == kNoVertex) {
                    component[w] = next_component;
                    stack.push_back(w);
                }
            }
            for (std::uint32_t e : g.in_edge_indices(v)) {
                VertexId w = g.edge(e).src;
                if (component[w] == kNoVertex) {
                    component[w] = next_component;
                    stack.push_back(w);
                }
            }
        }
        ++next_component;
    }

    std::vector<std::vector<VertexId>> groups(next_component);
    for (VertexId v = 0; v < n; ++v) {
        groups[component[v]].push_back(v); // ascending since v ascends
    }
    // Size descending; ties by smallest contained id.
    std::sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) {
            return a.size() > b.size();
        }
        return a.front() < b.front();
    });
    return groups;
}

InteractionGraph induced_subgraph(const InteractionGraph& g, std::span<const VertexId> keep) {
    std::vector<VertexId> sorted(keep.begin(), keep.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    InteractionGraph out;
    std::unordered_map<VertexId, VertexId> remap;
    remap.reserve(sorted.size());
    for (VertexId v : sorted) {
        std::optional<UserProfile> profile;
        if (const UserProfile* p = g.profile(v)) {
            profile = *p;
        }
        remap[v] = out.add_vertex(g.kind(v), g.key(v), profile);
    }
    for (VertexId v : sorted) {
        for (std::uint32_t e : g.out_edge_indices(v)) {
            const Edge& edge = g.edge(e);
            auto it = remap.find(edge.dst);
            if (it != remap.end()) {
                out.add_edge(remap[v], it->second, edge.kind, edge.weight);
            }
        }
    }
    out.set_capture_window(g.capture_window().first, g.capture_window().second);
    return out;
}

InteractionGraph user_projection(const InteractionGraph& g) {
    const std::size_t n = g.vertex_count();

    // Poster of each tweet, via its (unique) incoming Posted edge.
    std::vector<VertexId> poster(n, kNoVertex);
    for (const Edge& e : g.edges()) {
        if (e.kind == EdgeKind::Posted && poster[e.dst] == kNoVertex) {
            poster[e.dst] = e.src;
        }
    }

    std::unordered_map<std::uint64_t, std::uint64_t> flow; // (u,v) -> weight
    auto accumulate = [&](VertexId u, VertexId v, std::uint64_t w) {
        if (u == kNoVertex || v == kNoVertex || u == v) {
            return;
        }
        flow[(static_cast<std::uint64_t>(u) << 32) | v] += w;
    };

    for (const Edge& e : g.edges()) {
        switch (e.kind) {
        case EdgeKind::Mentions:
            accumulate(poster[e.src], e.dst, e.weight);
            break;
        case EdgeKind::RetweetOf:
        case EdgeKind::ReplyTo:
        case EdgeKind::QuoteOf:
            accumulate(poster[e.src], poster[e.dst], e.weight);
            break;
        default:
            break;
        }
    }

    std::vector<bool> active(n, false);
    for (const auto& [pair, weight] : flow) {
        (void)weight;
        active[static_cast<VertexId>(pair >> 32)] = true;
        active[static_cast<VertexId>(pair & 0xFFFFFFFFu)] = true;
    }

    InteractionGraph out;
    std::unordered_map<VertexId, VertexId> remap;
    for (VertexId v = 0; v < n; ++v) {
        if (!g.is_user(v)) {
            continue;
        }
        const UserProfile* p = g.profile(v);
        bool is_seed = p != nullptr && p->is_seed;
        if (!active[v] && !is_seed) {
            continue;
        }
        std::optional<UserProfile> profile;
        if (p != nullptr) {
            profile = *p;
        }
        remap[v] = out.add_vertex(VertexKind::User, g.key(v), profile);
    }

    std::vector<std::pair<std::uint64_t, std::uint64_t>> ordered(flow.begin(), flow.end());
    std::sort(ordered.begin(), ordered.end());
    for (const auto& [pair, weight] : ordered) {
        VertexId u = static_cast<VertexId>(pair >> 32);
        VertexId v = static_cast<VertexId>(pair & 0xFFFFFFFFu);
        out.add_edge(remap.at(u), remap.at(v), EdgeKind::Interacts, weight);
    }
    out.set_capture_window(g.capture_window().first, g.capture_window().second);
    return out;
}

} // namespace twinet
