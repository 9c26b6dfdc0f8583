#include "twinet/community.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "twinet/errors.hpp"

namespace twinet {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Independent stream per (seed, generation, slot) so results do not depend
/// on scheduling or thread count.
std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t generation, std::uint64_t slot) {
    std::uint64_t h = splitmix64(seed ^ 0xA54FF53A5F1D36F1ULL);
    h = splitmix64(h + generation);
    h = splitmix64(h + slot);
    return std::mt19937_64(h);
}

/// Renumbers labels by first appearance in vertex order; returns the count.
std::uint32_t compact_labels(std::vector<std::uint32_t>& labels) {
    std::uint32_t max_label = 0;
    for (std::uint32_t l : labels) {
        max_label = std::max(max_label, l);
    }
    std::vector<std::uint32_t> remap(static_cast<std::size_t>(max_label) + 1, kNoVertex);
    std::uint32_t next = 0;
    for (std::uint32_t& l : labels) {
        if (remap[l] == kNoVertex) {
            remap[l] = next++;
        }
        l = remap[l];
    }
    return next;
}

double move_gain_value(double m, double k_v, double w_from, double w_to, double tot_from,
                       double tot_to) {
    return (w_to - w_from) / m - k_v * (k_v + tot_to - tot_from) / (2.0 * m * m);
}

/// Greedy vertex-move sweeps over a compact label vector. Returns true when
/// the last sweep made no move (converged).
bool greedy_sweeps(const UndirectedGraph& g, std::vector<std::uint32_t>& labels,
                   std::uint32_t label_count, std::size_t max_sweeps, std::mt19937_64& rng,
                   std::uint64_t& evaluations) {
    const std::size_t n = g.size();
    const double m = g.total_weight();

    std::vector<double> comm_tot(label_count, 0.0);
    for (VertexId v = 0; v < n; ++v) {
        comm_tot[labels[v]] += g.strength(v);
    }

    std::vector<double> weight_to(label_count, 0.0);
    std::vector<std::uint32_t> touched;
    std::vector<VertexId> order(n);
    std::iota(order.begin(), order.end(), 0);

    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        std::shuffle(order.begin(), order.end(), rng);
        std::size_t moves = 0;
        for (VertexId v : order) {
            touched.clear();
            g.for_neighbors(v, [&](VertexId w, double weight) {
                std::uint32_t c = labels[w];
                if (weight_to[c] == 0.0) {
                    touched.push_back(c);
                }
                weight_to[c] += weight;
            });

            const std::uint32_t from = labels[v];
            const double w_from = weight_to[from];
            const double k_v = g.strength(v);
            std::uint32_t best = from;
            double best_gain = 0.0;
            for (std::uint32_t c : touched) {
                if (c == from) {
                    continue;
                }
                double gain =
                    move_gain_value(m, k_v, w_from, weight_to[c], comm_tot[from], comm_tot[c]);
                ++evaluations;
                if (gain > best_gain || (gain == best_gain && best != from && c < best)) {
                    best_gain = gain;
                    best = c;
                }
            }
            for (std::uint32_t c : touched) {
                weight_to[c] = 0.0;
            }
            if (best != from) {
                comm_tot[from] -= k_v;
                comm_tot[best] += k_v;
                labels[v] = best;
                ++moves;
            }
        }
        if (moves == 0) {
            return true;
        }
    }
    return false;
}

/// Asynchronous label propagation from singleton labels: each vertex adopts
/// the label with the largest incident weight, visiting vertices in a random
/// order, until stable (bounded at four sweeps).
std::vector<std::uint32_t> label_propagation_init(const UndirectedGraph& g,
                                                  std::mt19937_64& rng) {
    constexpr std::size_t kMaxSweeps = 4;
    const std::size_t n = g.size();
    std::vector<std::uint32_t> labels(n);
    std::iota(labels.begin(), labels.end(), 0);

    std::vector<double> weight_to(n, 0.0);
    std::vector<std::uint32_t> touched;
    std::vector<VertexId> order(n);
    std::iota(order.begin(), order.end(), 0);

    for (std::size_t sweep = 0; sweep < kMaxSweeps; ++sweep) {
        std::shuffle(order.begin(), order.end(), rng);
        std::size_t changes = 0;
        for (VertexId v : order) {
            if (g.degree(v) == 0) {
                continue;
            }
            touched.clear();
            g.for_neighbors(v, [&](VertexId w, double weight) {
                std::uint32_t c = labels[w];
                if (weight_to[c] == 0.0) {
                    touched.push_back(c);
                }
                weight_to[c] += weight;
            });
            double best_weight = 0.0;
            for (std::uint32_t c : touched) {
                best_weight = std::max(best_weight, weight_to[c]);
            }
            std::vector<std::uint32_t> argmax;
            for (std::uint32_t c : touched) {
                if (weight_to[c] == best_weight) {
                    argmax.push_back(c);
                }
            }
            for (std::uint32_t c : touched) {
                weight_to[c] = 0.0;
            }
            std::uint32_t current = labels[v];
            if (std::find(argmax.begin(), argmax.end(), current) != argmax.end()) {
                continue; // keep a label that is already maximal
            }
            std::sort(argmax.begin(), argmax.end());
            std::uint32_t pick = argmax.size() == 1
                                     ? argmax.front()
                                     : argmax[std::uniform_int_distribution<std::size_t>(
                                           0, argmax.size() - 1)(rng)];
            labels[v] = pick;
            ++changes;
        }
        if (changes == 0) {
            break;
        }
    }
    compact_labels(labels);
    return labels;
}

/// Aligns B's labels onto A's by greedy maximal overlap, then inherits each
/// vertex label from either parent uniformly.
std::vector<std::uint32_t> overlap_crossover(const std::vector<std::uint32_t>& a,
                                             const std::vector<std::uint32_t>& b,
                                             std::uint32_t a_count, std::uint32_t b_count,
                                             std::mt19937_64& rng) {
    const std::size_t n = a.size();

    std::unordered_map<std::uint64_t, std::uint32_t> overlap;
    for (std::size_t v = 0; v < n; ++v) {
        overlap[(static_cast<std::uint64_t>(a[v]) << 32) | b[v]] += 1;
    }
    struct Cell {
        std::uint32_t count;
        std::uint32_t a_label;
        std::uint32_t b_label;
    };
    std::vector<Cell> cells;
    cells.reserve(overlap.size());
    for (const auto& [packed, count] : overlap) {
        cells.push_back(Cell{count, static_cast<std::uint32_t>(packed >> 32),
                             static_cast<std::uint32_t>(packed & 0xFFFFFFFFu)});
    }
    std::sort(cells.begin(), cells.end(), [](const Cell& x, const Cell& y) {
        if (x.count != y.count) {
            return x.count > y.count;
        }
        if (x.a_label != y.a_label) {
            return x.a_label < y.a_label;
        }
        return x.b_label < y.b_label;
    });

    std::vector<std::uint32_t> b_to_a(b_count, kNoVertex);
    std::vector<bool> a_taken(a_count, false);
    for (const Cell& cell : cells) {
        if (b_to_a[cell.b_label] == kNoVertex && !a_taken[cell.a_label]) {
            b_to_a[cell.b_label] = cell.a_label;
            a_taken[cell.a_label] = true;
        }
    }
    std::uint32_t fresh = a_count;
    for (std::uint32_t bl = 0; bl < b_count; ++bl) {
        if (b_to_a[bl] == kNoVertex) {
            b_to_a[bl] = fresh++;
        }
    }

    std::vector<std::uint32_t> child(n);
    std::uniform_int_distribution<int> coin(0, 1);
    for (std::size_t v = 0; v < n; ++v) {
        child[v] = coin(rng) == 0 ? a[v] : b_to_a[b[v]];
    }
    return child;
}

/// Reassigns each vertex, with the configured probability, to the label of a
/// uniformly chosen neighbor.
void neighbor_label_mutation(const UndirectedGraph& g, std::vector<std::uint32_t>& labels,
                             double rate, std::mt19937_64& rng) {
    if (rate <= 0.0) {
        return;
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (VertexId v = 0; v < g.size(); ++v) {
        if (g.degree(v) == 0 || unit(rng) >= rate) {
            continue;
        }
        auto arcs = g.arcs(v);
        std::size_t pick =
            std::uniform_int_distribution<std::size_t>(0, arcs.size() - 1)(rng);
        labels[v] = labels[arcs[pick].neighbor];
    }
}

/// Runs fn(0..count-1), either inline or on a small worker pool. Slots are
/// independent, so scheduling cannot affect results.
void run_slots(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) {
            fn(i);
        }
    };
    std::vector<std::jthread> pool;
    unsigned pool_size = static_cast<unsigned>(
        std::min<std::size_t>(threads, count));
    pool.reserve(pool_size);
    for (unsigned t = 0; t < pool_size; ++t) {
        pool.emplace_back(worker);
    }
}

std::size_t tournament_pick(const std::vector<Individual>& population,
                            std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> dist(0, population.size() - 1);
    std::size_t a = dist(rng);
    std::size_t b = dist(rng);
    if (population[a].fitness != population[b].fitness) {
        return population[a].fitness > population[b].fitness ? a : b;
    }
    return std::min(a, b);
}

} // namespace

void MemeticConfig::validate() const {
    if (population_size < 4) {
        throw std::invalid_argument("population size must be at least 4");
    }
    if (elite_count < 1 || elite_count >= population_size) {
        throw std::invalid_argument("elite count must be in [1, population_size)");
    }
    if (crossover_rate < 0.0 || crossover_rate > 1.0) {
        throw std::invalid_argument("crossover rate must be within [0,1]");
    }
    if (mutation_rate < 0.0 || mutation_rate > 1.0) {
        throw std::invalid_argument("mutation rate must be within [0,1]");
    }
    if (stagnation_limit < 1) {
        throw std::invalid_argument("stagnation limit must be at least 1");
    }
    if (threads < 1) {
        throw std::invalid_argument("thread count must be at least 1");
    }
}

Individual local_search(const UndirectedGraph& g, Individual individual,
                        std::size_t max_sweeps, std::mt19937_64& rng,
                        std::uint64_t* evaluations) {
    if (individual.genotype.size() != g.size()) {
        throw std::invalid_argument("genotype does not cover the vertex set");
    }
    std::uint32_t label_count = compact_labels(individual.genotype);
    std::uint64_t evals = 0;
    greedy_sweeps(g, individual.genotype, label_count, max_sweeps, rng, evals);
    Partition p;
    p.labels = individual.genotype;
    p.community_count = compact_labels(p.labels);
    individual.genotype = p.labels;
    individual.fitness = modularity(g, p);
    ++evals;
    if (evaluations != nullptr) {
        *evaluations += evals;
    }
    return individual;
}

CommunityResult detect_communities(const UndirectedGraph& g, const MemeticConfig& cfg) {
    cfg.validate();
    if (g.total_weight() <= 0.0) {
        throw AnalysisError("community detection is undefined for a graph without edges");
    }

    const std::size_t n = g.size();
    const std::size_t population_size = cfg.population_size;
    std::vector<Individual> population(population_size);
    std::vector<std::uint64_t> slot_evals(population_size, 0);

    // Generation 0: one all-singletons individual, the rest label propagation.
    run_slots(population_size, cfg.threads, [&](std::size_t slot) {
        Individual ind;
        if (slot == 0) {
            ind.genotype = Partition::singletons(n).labels;
        } else {
            std::mt19937_64 rng = stream_rng(cfg.rng_seed, 0, slot);
            ind.genotype = label_propagation_init(g, rng);
        }
        Partition p;
        p.labels = ind.genotype;
        p.community_count = compact_labels(p.labels);
        ind.fitness = modularity(g, p);
        slot_evals[slot] = 1;
        population[slot] = std::move(ind);
    });

    std::uint64_t evaluations =
        std::accumulate(slot_evals.begin(), slot_evals.end(), std::uint64_t{0});

    auto best_index = [](const std::vector<Individual>& pop) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < pop.size(); ++i) {
            if (pop[i].fitness > pop[best].fitness) {
                best = i;
            }
        }
        return best;
    };

    Individual best = population[best_index(population)];
    std::size_t stagnation = 0;
    std::size_t generations_run = 0;
    std::vector<double> q_history;

    const std::size_t offspring_count = population_size - cfg.elite_count;
    std::vector<Individual> offspring(offspring_count);
    std::vector<std::uint64_t> offspring_evals(offspring_count, 0);

    for (std::size_t gen = 1; gen <= cfg.max_generations; ++gen) {
        run_slots(offspring_count, cfg.threads, [&](std::size_t slot) {
            std::mt19937_64 rng = stream_rng(cfg.rng_seed, gen, slot);
            std::uint64_t evals = 0;

            const Individual& parent_a = population[tournament_pick(population, rng)];
            const Individual& parent_b = population[tournament_pick(population, rng)];

            std::vector<std::uint32_t> genotype;
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            if (unit(rng) < cfg.crossover_rate) {
                std::vector<std::uint32_t> a = parent_a.genotype;
                std::vector<std::uint32_t> b = parent_b.genotype;
                std::uint32_t a_count = compact_labels(a);
                std::uint32_t b_count = compact_labels(b);
                genotype = overlap_crossover(a, b, a_count, b_count, rng);
            } else {
                genotype = parent_a.genotype;
            }
            neighbor_label_mutation(g, genotype, cfg.mutation_rate, rng);

            std::uint32_t label_count = compact_labels(genotype);
            greedy_sweeps(g, genotype, label_count, cfg.local_search_sweeps, rng, evals);
            label_count = compact_labels(genotype);

            Individual child;
            Partition p;
            p.labels = genotype;
            p.community_count = label_count;
            child.fitness = modularity(g, p);
            ++evals;
            child.genotype = std::move(genotype);
            offspring_evals[slot] = evals;
            offspring[slot] = std::move(child);
        });

        evaluations += std::accumulate(offspring_evals.begin(), offspring_evals.end(),
                                       std::uint64_t{0});

        // Elitist replacement: the best survivors keep their slots, offspring
        // fill the rest.
        std::vector<std::size_t> by_fitness(population_size);
        std::iota(by_fitness.begin(), by_fitness.end(), 0);
        std::sort(by_fitness.begin(), by_fitness.end(), [&](std::size_t a, std::size_t b) {
            if (population[a].fitness != population[b].fitness) {
                return population[a].fitness > population[b].fitness;
            }
            return a < b;
        });
        std::vector<Individual> next;
        next.reserve(population_size);
        for (std::size_t i = 0; i < cfg.elite_count; ++i) {
            next.push_back(population[by_fitness[i]]);
        }
        for (Individual& child : offspring) {
            next.push_back(std::move(child));
        }
        population = std::move(next);
        offspring.assign(offspring_count, Individual{});

        generations_run = gen;
        const Individual& gen_best = population[best_index(population)];
        if (gen_best.fitness > best.fitness) {
            best = gen_best;
            stagnation = 0;
        } else {
            ++stagnation;
        }
        q_history.push_back(best.fitness);
        if (stagnation >= cfg.stagnation_limit) {
            break;
        }
    }

    CommunityResult result;
    result.partition.labels = best.genotype;
    result.partition.community_count = compact_labels(result.partition.labels);
    result.q = modularity(g, result.partition);
    ++evaluations;
    result.community_sizes = result.partition.sizes();
    result.generations_run = generations_run;
    result.evaluations = evaluations;
    result.q_history = std::move(q_history);
    return result;
}

std::pair<Partition, double> brute_force_best_partition(const UndirectedGraph& g) {
    const std::size_t n = g.size();
    if (n == 0) {
        throw std::invalid_argument("empty graph");
    }
    if (n > 12) {
        throw std::invalid_argument("exhaustive search is limited to 12 vertices");
    }
    if (g.total_weight() <= 0.0) {
        throw AnalysisError("modularity is undefined for a graph without edges");
    }

    struct EdgeRef {
        VertexId u;
        VertexId v;
        double w;
    };
    std::vector<EdgeRef> edges;
    for (VertexId v = 0; v < n; ++v) {
        g.for_neighbors(v, [&](VertexId w, double weight) {
            if (v < w) {
                edges.push_back(EdgeRef{v, w, weight});
            }
        });
    }

    const double two_m = 2.0 * g.total_weight();
    std::vector<std::uint32_t> labels(n, 0);
    std::vector<std::uint32_t> caps(n, 0); // caps[i] = 1 + max(labels[0..i-1])
    for (std::size_t i = 1; i < n; ++i) {
        caps[i] = 1;
    }

    std::vector<double> comm_in(n, 0.0);
    std::vector<double> comm_tot(n, 0.0);

    auto evaluate = [&]() {
        std::uint32_t count = 0;
        for (std::size_t i = 0; i < n; ++i) {
            count = std::max(count, labels[i] + 1);
        }
        std::fill(comm_in.begin(), comm_in.begin() + count, 0.0);
        std::fill(comm_tot.begin(), comm_tot.begin() + count, 0.0);
        for (VertexId v = 0; v < n; ++v) {
            comm_tot[labels[v]] += g.strength(v);
        }
        for (const EdgeRef& e : edges) {
            if (labels[e.u] == labels[e.v]) {
                comm_in[labels[e.u]] += 2.0 * e.w;
            }
        }
        double q = 0.0;
        for (std::uint32_t c = 0; c < count; ++c) {
            double share = comm_tot[c] / two_m;
            q += comm_in[c] / two_m - share * share;
        }
        return q;
    };

    std::vector<std::uint32_t> best_labels = labels;
    double best_q = evaluate();

    while (true) {
        // Advance to the next restricted growth string.
        std::size_t i = n - 1;
        while (i > 0 && labels[i] == caps[i]) {
            --i;
        }
        if (i == 0) {
            break;
        }
        labels[i] += 1;
        std::uint32_t cap_after = std::max(caps[i], labels[i] + 1);
        for (std::size_t j = i + 1; j < n; ++j) {
            labels[j] = 0;
            caps[j] = cap_after;
        }
        double q = evaluate();
        if (q > best_q) {
            best_q = q;
            best_labels = labels;
        }
    }

    Partition p;
    p.labels = std::move(best_labels);
    p.community_count = compact_labels(p.labels);
    return {std::move(p), best_q};
}

std::pair<UndirectedGraph, Partition> planted_partition_graph(
    std::span<const std::size_t> block_sizes, double p_in, double p_out,
    std::uint64_t rng_seed) {
    if (block_sizes.empty()) {
        throw std::invalid_argument("at least one block is required");
    }
    for (std::size_t size : block_sizes) {
        if (size < 1) {
            throw std::invalid_argument("block sizes must be at least 1");
        }
    }
    if (p_in < 0.0 || p_in > 1.0 || p_out < 0.0 || p_out > 1.0) {
        throw std::invalid_argument("edge probabilities must be within [0,1]");
    }
    if (!(p_in > p_out)) {
        throw std::invalid_argument("p_in must exceed p_out");
    }

    std::size_t n = 0;
    for (std::size_t size : block_sizes) {
        n += size;
    }

    Partition planted;
    planted.labels.reserve(n);
    for (std::size_t block = 0; block < block_sizes.size(); ++block) {
        for (std::size_t i = 0; i < block_sizes[block]; ++i) {
            planted.labels.push_back(static_cast<std::uint32_t>(block));
        }
    }
    planted.community_count = static_cast<std::uint32_t>(block_sizes.size());

    UndirectedGraph g(n);
    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (VertexId i = 0; i < n; ++i) {
        for (VertexId j = i + 1; j < n; ++j) {
            double p = planted.labels[i] == planted.labels[j] ? p_in : p_out;
            if (unit(rng) < p) {
                g.add_edge(i, j, 1.0);
            }
        }
    }
    return {std::move(g), std::move(planted)};
}

} // namespace twinet
