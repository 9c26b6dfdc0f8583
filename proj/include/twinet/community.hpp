#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "twinet/metrics.hpp"
#include "twinet/undirected.hpp"

namespace twinet {

/// Knobs of the memetic modularity solver. `threads` only controls execution;
/// results depend solely on the graph, the seed and the search parameters.
struct MemeticConfig {
    std::size_t population_size = 64;
    std::size_t max_generations = 200;
    std::size_t stagnation_limit = 30; // generations without best-Q improvement
    double crossover_rate = 0.9;
    double mutation_rate = 0.05; // per vertex
    std::size_t local_search_sweeps = 5;
    std::size_t elite_count = 2;
    std::uint64_t rng_seed = 0;
    unsigned threads = 1;

    void validate() const; // throws std::invalid_argument
};

struct Individual {
    std::vector<std::uint32_t> genotype; // per-vertex community label
    double fitness = 0.0;                // Q of the genotype
};

struct CommunityResult {
    Partition partition; // canonicalized
    double q = 0.0;
    std::vector<std::size_t> community_sizes; // descending
    std::size_t generations_run = 0;
    std::uint64_t evaluations = 0;  // full + incremental fitness evaluations
    std::vector<double> q_history;  // best Q after each generation, non-decreasing
};

/// Population-based modularity maximization: label-propagation seeded
/// individuals evolve by tournament selection, overlap-aligned uniform
/// crossover, neighbor-label mutation and greedy vertex-move local search,
/// with elitist replacement. Deterministic for a fixed (graph, config) pair
/// regardless of thread count. Throws AnalysisError when the graph has no
/// edges.
CommunityResult detect_communities(const UndirectedGraph& g, const MemeticConfig& cfg);

/// Greedy vertex-move hill climbing: sweeps the vertices in an rng-drawn
/// order, moving each to the adjacent community with the largest positive
/// modularity gain, until a sweep makes no move or the budget is exhausted.
/// Q never decreases. `evaluations`, when given, accumulates the number of
/// candidate-move gains evaluated.
Individual local_search(const UndirectedGraph& g, Individual individual,
                        std::size_t max_sweeps, std::mt19937_64& rng,
                        std::uint64_t* evaluations = nullptr);

/// Exact maximizer of modularity over all set partitions, enumerated in
/// restricted-growth-string order (first optimum wins ties). Refuses graphs
/// with more than 12 vertices.
std::pair<Partition, double> brute_force_best_partition(const UndirectedGraph& g);

/// Random block-structured benchmark graph: every intra-block pair is joined
/// independently with probability p_in, inter-block pairs with p_out
/// (requires p_in > p_out). Unit weights; deterministic per seed. Returns the
/// graph and the planted block partition.
std::pair<UndirectedGraph, Partition> planted_partition_graph(
    std::span<const std::size_t> block_sizes, double p_in, double p_out,
    std::uint64_t rng_seed);

} // namespace twinet
