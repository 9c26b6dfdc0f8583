#include "twinet/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "twinet/csv.hpp"
#include "twinet/errors.hpp"

namespace twinet {

Partition Partition::singletons(std::size_t n) {
    Partition p;
    p.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        p.labels[i] = static_cast<std::uint32_t>(i);
    }
    p.community_count = static_cast<std::uint32_t>(n);
    return p;
}

Partition Partition::single_block(std::size_t n) {
    Partition p;
    p.labels.assign(n, 0);
    p.community_count = n == 0 ? 0 : 1;
    return p;
}

void Partition::canonicalize() {
    std::vector<std::uint32_t> remap(community_count, kNoVertex);
    std::uint32_t next = 0;
    for (std::uint32_t& label : labels) {
        if (remap[label] == kNoVertex) {
            remap[label] = next++;
        }
        label = remap[label];
    }
    community_count = next;
}

std::vector<std::size_t> Partition::sizes() const {
    std::vector<std::size_t> counts(community_count, 0);
    for (std::uint32_t label : labels) {
        counts[label] += 1;
    }
    std::sort(counts.begin(), counts.end(), std::greater<>());
    while (!counts.empty() && counts.back() == 0) {
        counts.pop_back();
    }
    return counts;
}

namespace {

void check_partition(const UndirectedGraph& g, const Partition& p) {
    if (p.labels.size() != g.size()) {
        throw std::invalid_argument("partition does not cover the vertex set");
    }
    for (std::uint32_t label : p.labels) {
        if (label >= p.community_count) {
            throw std::invalid_argument("partition label out of range");
        }
    }
    if (g.total_weight() <= 0.0) {
        throw AnalysisError("modularity is undefined for a graph without edges");
    }
}

} // namespace

double modularity(const UndirectedGraph& g, const Partition& p) {
    check_partition(g, p);
    ModularityContext ctx(g, p);
    return ctx.q();
}

ModularityContext::ModularityContext(const UndirectedGraph& g, Partition p)
    : graph_(&g), partition_(std::move(p)), m_(g.total_weight()) {
    check_partition(g, partition_);
    comm_in_.assign(partition_.community_count, 0.0);
    comm_tot_.assign(partition_.community_count, 0.0);
    for (VertexId v = 0; v < g.size(); ++v) {
        std::uint32_t c = partition_.labels[v];
        comm_tot_[c] += g.strength(v);
        double internal = 0.0;
        g.for_neighbors(v, [&](VertexId w, double weight) {
            if (partition_.labels[w] == c) {
                internal += weight;
            }
        });
        comm_in_[c] += internal;
    }
}

double ModularityContext::q() const {
    const double two_m = 2.0 * m_;
    double q = 0.0;
    for (std::uint32_t c = 0; c < partition_.community_count; ++c) {
        const double share = comm_tot_[c] / two_m;
        q += comm_in_[c] / two_m - share * share;
    }
    return q;
}

double ModularityContext::weight_to_community(VertexId v, std::uint32_t c) const {
    double total = 0.0;
    graph_->for_neighbors(v, [&](VertexId w, double weight) {
        if (partition_.labels[w] == c) {
            total += weight;
        }
    });
    return total;
}

double ModularityContext::move_gain(VertexId v, std::uint32_t to) const {
    if (v >= graph_->size()) {
        throw std::invalid_argument("unknown vertex id");
    }
    if (to >= partition_.community_count) {
        throw std::invalid_argument("unknown community label");
    }
    std::uint32_t from = partition_.labels[v];
    if (to == from) {
        return 0.0;
    }
    const double k_v = graph_->strength(v);
    const double w_from = weight_to_community(v, from);
    const double w_to = weight_to_community(v, to);
    return (w_to - w_from) / m_ -
           k_v * (k_v + comm_tot_[to] - comm_tot_[from]) / (2.0 * m_ * m_);
}

void ModularityContext::apply_move(VertexId v, std::uint32_t to) {
    if (v >= graph_->size()) {
        throw std::invalid_argument("unknown vertex id");
    }
    if (to >= partition_.community_count) {
        throw std::invalid_argument("unknown community label");
    }
    std::uint32_t from = partition_.labels[v];
    if (to == from) {
        return;
    }
    const double w_from = weight_to_community(v, from);
    const double w_to = weight_to_community(v, to);
    const double k_v = graph_->strength(v);
    comm_in_[from] -= 2.0 * w_from;
    comm_in_[to] += 2.0 * w_to;
    comm_tot_[from] -= k_v;
    comm_tot_[to] += k_v;
    partition_.labels[v] = to;
}

void ModularityContext::community_weights(
    VertexId v, std::vector<std::pair<std::uint32_t, double>>& out) const {
    out.clear();
    graph_->for_neighbors(v, [&](VertexId w, double weight) {
        std::uint32_t c = partition_.labels[w];
        auto it = std::find_if(out.begin(), out.end(),
                               [c](const auto& entry) { return entry.first == c; });
        if (it == out.end()) {
            out.emplace_back(c, weight);
        } else {
            it->second += weight;
        }
    });
    std::uint32_t own = partition_.labels[v];
    auto it = std::find_if(out.begin(), out.end(),
                           [own](const auto& entry) { return entry.first == own; });
    if (it == out.end()) {
        out.emplace_back(own, 0.0);
    }
    std::sort(out.begin(), out.end());
}

double modularity_delta(const ModularityContext& ctx, VertexId v, std::uint32_t from,
                        std::uint32_t to) {
    if (from >= ctx.label_count() || to >= ctx.label_count()) {
        throw std::invalid_argument("unknown community label");
    }
    if (ctx.label(v) != from) {
        throw std::invalid_argument("vertex is not labeled with the given source community");
    }
    return ctx.move_gain(v, to);
}

ImportanceScore importance(const UserProfile& profile, VertexId vertex, std::uint64_t k,
                           std::uint64_t max_followers, std::uint64_t max_friends,
                           int inorm_divisor) {
    if (max_followers == 0 || max_friends == 0) {
        throw AnalysisError("importance normalization requires nonzero follower and friend maxima");
    }
    if (inorm_divisor != 1 && inorm_divisor != 2) {
        throw std::invalid_argument("inorm divisor must be 1 or 2");
    }
    ImportanceScore score;
    score.vertex = vertex;
    score.k = k;
    score.followers_norm =
        static_cast<double>(profile.followers_count) / static_cast<double>(max_followers);
    score.friends_norm =
        static_cast<double>(profile.friends_count) / static_cast<double>(max_friends);
    score.inorm = (score.followers_norm + score.friends_norm) / inorm_divisor;
    score.importance = static_cast<double>(k) * score.inorm;
    return score;
}

std::vector<RankedUser> rank_users(const InteractionGraph& g, RankBy by, std::size_t top,
                                   int inorm_divisor) {
    if (inorm_divisor != 1 && inorm_divisor != 2) {
        throw std::invalid_argument("inorm divisor must be 1 or 2");
    }

    std::uint64_t max_followers = 0;
    std::uint64_t max_friends = 0;
    std::vector<VertexId> users;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (!g.is_user(v)) {
            continue;
        }
        users.push_back(v);
        if (const UserProfile* p = g.profile(v)) {
            max_followers = std::max(max_followers, p->followers_count);
            max_friends = std::max(max_friends, p->friends_count);
        }
    }

    std::vector<RankedUser> rows;
    rows.reserve(users.size());
    for (VertexId v : users) {
        static const UserProfile kEmptyProfile{};
        const UserProfile* p = g.profile(v);
        if (p == nullptr) {
            p = &kEmptyProfile;
        }
        RankedUser row;
        row.vertex = v;
        row.screen_name = g.key(v);
        row.followers = p->followers_count;
        row.friends = p->friends_count;
        row.degree = g.degree(v, DegreeMode::Total, false);
        // A zero maximum means no user carries that signal; its share is zero.
        double followers_norm =
            max_followers == 0
                ? 0.0
                : static_cast<double>(p->followers_count) / static_cast<double>(max_followers);
        double friends_norm =
            max_friends == 0
                ? 0.0
                : static_cast<double>(p->friends_count) / static_cast<double>(max_friends);
        row.importance =
            static_cast<double>(row.degree) * (followers_norm + friends_norm) / inorm_divisor;
        rows.push_back(std::move(row));
    }

    auto degree_order = [](const RankedUser& a, const RankedUser& b) {
        if (a.degree != b.degree) {
            return a.degree > b.degree;
        }
        return a.vertex < b.vertex;
    };
    auto importance_order = [](const RankedUser& a, const RankedUser& b) {
        if (a.importance != b.importance) {
            return a.importance > b.importance;
        }
        return a.vertex < b.vertex;
    };
    std::sort(rows.begin(), rows.end(),
              by == RankBy::Degree ? degree_order : importance_order);

    if (rows.size() > top) {
        rows.resize(top);
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i].rank = i + 1;
    }
    return rows;
}

void write_ranking_csv(std::ostream& out, const std::vector<RankedUser>& rows) {
    out << "rank,screen_name,followers,friends,degree,importance\n";
    char buffer[32];
    for (const RankedUser& row : rows) {
        std::snprintf(buffer, sizeof(buffer), "%.6f", row.importance);
        out << row.rank << ',' << csv::escape(row.screen_name) << ',' << row.followers << ','
            << row.friends << ',' << row.degree << ',' << buffer << '\n';
    }
}

InteractionGraph importance_core(const InteractionGraph& g, std::size_t top,
                                 int inorm_divisor) {
    if (top < 1) {
        throw std::invalid_argument("core size must be at least 1");
    }
    InteractionGraph projection = user_projection(g);
    if (projection.vertex_count() == 0) {
        throw AnalysisError("user projection is empty");
    }

    // Importance is measured in the full graph; rank_users carries the
    // degree-in-g and graph-wide maxima semantics.
    std::vector<RankedUser> ranked = rank_users(g, RankBy::Importance, g.vertex_count(),
                                                inorm_divisor);
    std::vector<VertexId> selected;
    selected.reserve(top);
    for (const RankedUser& row : ranked) {
        VertexId in_projection = projection.find(VertexKind::User, row.screen_name);
        if (in_projection == kNoVertex) {
            continue;
        }
        selected.push_back(in_projection);
        if (selected.size() == top) {
            break;
        }
    }

    InteractionGraph induced = induced_subgraph(projection, selected);
    auto components = weakly_connected_components(induced);
    if (components.empty()) {
        return induced;
    }
    return induced_subgraph(induced, components.front());
}

} // namespace twinet
