#include "twinet/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "twinet/errors.hpp"
#include "twinet/exporter.hpp"
#include "twinet/ingest.hpp"
#include "twinet/snapshot.hpp"
#include "twinet/undirected.hpp"

namespace twinet::cli {

namespace {

namespace fs = std::filesystem;

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary); // binary keeps LF endings
    if (!out) {
        throw InputError("cannot open " + path.string() + " for writing");
    }
    return out;
}

void ensure_out_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec && !fs::is_directory(dir)) {
        throw InputError("cannot create output directory " + dir);
    }
}

std::string summary_line(const CommunityResult& result) {
    char buffer[128];
    std::snprintf(buffer, sizeof(buffer), "Q=%.6f communities=%zu generations=%zu",
                  result.q, result.community_sizes.size(), result.generations_run);
    return buffer;
}

} // namespace

int cmd_ingest(const IngestOptions& opt) {
    std::ifstream records(opt.records_path);
    if (!records) {
        throw InputError("cannot open records file " + opt.records_path);
    }
    std::ifstream seeds_file(opt.seeds_path);
    if (!seeds_file) {
        throw InputError("cannot open seeds file " + opt.seeds_path);
    }
    std::vector<std::string> seeds = load_seed_list(seeds_file);
    if (seeds.empty()) {
        throw InputError("seed list is empty");
    }

    GraphBuilder builder(seeds);
    ReadReport report = read_records(records, [&](TweetRecord&& record) {
        builder.add(record);
    });
    for (const LineError& error : report.errors) {
        std::cerr << opt.records_path << ":" << error.line_no << ": " << error.message << "\n";
    }
    if (report.total_lines == 0) {
        std::cerr << "warning: no records in " << opt.records_path << "\n";
    }
    if (report.total_lines > 0 &&
        report.errors.size() * 10 > report.total_lines) {
        throw InputError("more than 10% of lines failed to parse (" +
                         std::to_string(report.errors.size()) + "/" +
                         std::to_string(report.total_lines) + ")");
    }

    InteractionGraph graph = builder.finish();
    ensure_out_dir(opt.out_dir);
    save_snapshot_file((fs::path(opt.out_dir) / "graph.twg").string(), graph);

    CaptureStats stats = capture_stats(graph);
    {
        auto out = open_output(fs::path(opt.out_dir) / "stats.csv");
        write_stats_csv(out, stats);
    }
    std::cout << "vertices=" << stats.total_vertices << " edges=" << stats.total_edges
              << " bad_lines=" << report.errors.size();
    if (!stats.first_captured_at.empty()) {
        std::cout << " window=" << stats.first_captured_at << ".." << stats.last_captured_at;
    }
    std::cout << "\n";
    return kExitOk;
}

int cmd_stats(const StatsOptions& opt) {
    InteractionGraph graph = load_snapshot_file(opt.snapshot_path);
    write_stats_csv(std::cout, capture_stats(graph));
    return kExitOk;
}

int cmd_rank(const RankOptions& opt) {
    InteractionGraph graph = load_snapshot_file(opt.snapshot_path);
    std::vector<RankedUser> rows = rank_users(graph, opt.by, opt.top, opt.inorm_divisor);
    write_ranking_csv(std::cout, rows);
    if (opt.out_dir) {
        ensure_out_dir(*opt.out_dir);
        auto out = open_output(fs::path(*opt.out_dir) / "ranking.csv");
        write_ranking_csv(out, rows);
    }
    return kExitOk;
}

int cmd_communities(const CommunitiesOptions& opt) {
    InteractionGraph graph = load_snapshot_file(opt.snapshot_path);
    InteractionGraph projection = user_projection(graph);

    // A core larger than the projection changes nothing; skip the extraction
    // so disconnected projections are still analyzed whole.
    InteractionGraph analyzed =
        (opt.top_core && *opt.top_core < projection.vertex_count())
            ? importance_core(graph, *opt.top_core, opt.inorm_divisor)
            : std::move(projection);

    UndirectedGraph undirected = UndirectedGraph::collapse(analyzed);
    CommunityResult result = detect_communities(undirected, opt.memetic);

    ensure_out_dir(opt.out_dir);
    {
        auto out = open_output(fs::path(opt.out_dir) / "communities.csv");
        write_communities_csv(out, analyzed, result.partition.labels);
    }
    std::string summary = summary_line(result);
    {
        auto out = open_output(fs::path(opt.out_dir) / "summary.txt");
        out << summary << "\n";
    }
    std::cout << summary << "\n";
    return kExitOk;
}

int cmd_export(const ExportOptions& opt) {
    InteractionGraph graph = load_snapshot_file(opt.snapshot_path);

    ExportAnnotations ann;
    ann.size_by_importance = opt.size_by_importance;
    ann.inorm_divisor = opt.inorm_divisor;
    if (opt.communities_path) {
        std::ifstream in(*opt.communities_path);
        if (!in) {
            throw InputError("cannot open communities file " + *opt.communities_path);
        }
        ann.communities = load_communities_csv(in, graph);
    }

    ensure_out_dir(opt.out_dir);
    if (opt.format == "gexf") {
        auto out = open_output(fs::path(opt.out_dir) / "graph.gexf");
        write_gexf(out, graph, ann);
    } else if (opt.format == "dot") {
        auto out = open_output(fs::path(opt.out_dir) / "graph.dot");
        write_dot(out, graph, ann);
    } else if (opt.format == "csv") {
        auto out = open_output(fs::path(opt.out_dir) / "edges.csv");
        write_edge_csv(out, graph);
    } else {
        throw CLI::ValidationError("--format", "unknown format " + opt.format);
    }
    return kExitOk;
}

int run(int argc, const char* const* argv) {
    CLI::App app{"Social interaction graph analyzer: ingest captured tweet records, "
                 "rank users by degree or follower/friend-weighted importance, detect "
                 "communities by memetic modularity maximization, export graphs."};
    app.require_subcommand(1);

    IngestOptions ingest;
    auto* ingest_cmd = app.add_subcommand("ingest", "Build a graph snapshot from JSON-lines records");
    ingest_cmd->add_option("records", ingest.records_path, "JSON-lines records file")->required();
    ingest_cmd->add_option("seeds", ingest.seeds_path, "seed handle list, one per line")->required();
    ingest_cmd->add_option("--out", ingest.out_dir, "output directory")->capture_default_str();

    StatsOptions stats;
    auto* stats_cmd = app.add_subcommand("stats", "Print the vertex census of a snapshot");
    stats_cmd->add_option("snapshot", stats.snapshot_path, "graph snapshot")->required();

    RankOptions rank;
    std::string rank_by = "degree";
    std::string rank_out;
    auto* rank_cmd = app.add_subcommand("rank", "Rank users by degree or importance");
    rank_cmd->add_option("snapshot", rank.snapshot_path, "graph snapshot")->required();
    rank_cmd->add_option("--by", rank_by, "ranking key")
        ->check(CLI::IsMember({"degree", "importance"}))
        ->capture_default_str();
    rank_cmd->add_option("--top", rank.top, "number of rows")->capture_default_str();
    rank_cmd->add_option("--inorm-divisor", rank.inorm_divisor, "importance normalization divisor")
        ->check(CLI::IsMember({1, 2}))
        ->capture_default_str();
    rank_cmd->add_option("--out", rank_out, "also write ranking.csv into this directory");

    CommunitiesOptions communities;
    communities.memetic.rng_seed = kDefaultSeed;
    std::int64_t top_core = -1;
    auto* communities_cmd =
        app.add_subcommand("communities", "Detect communities on the user projection");
    communities_cmd->add_option("snapshot", communities.snapshot_path, "graph snapshot")->required();
    communities_cmd->add_option("--top-core", top_core,
                                "restrict to the connected core of the N most important users");
    communities_cmd->add_option("--seed", communities.memetic.rng_seed, "random seed")
        ->capture_default_str();
    communities_cmd->add_option("--population", communities.memetic.population_size, "population size")
        ->capture_default_str();
    communities_cmd
        ->add_option("--max-generations", communities.memetic.max_generations, "generation budget")
        ->capture_default_str();
    communities_cmd
        ->add_option("--stagnation", communities.memetic.stagnation_limit,
                     "stop after this many generations without improvement")
        ->capture_default_str();
    communities_cmd->add_option("--crossover-rate", communities.memetic.crossover_rate, "crossover rate")
        ->capture_default_str();
    communities_cmd
        ->add_option("--mutation-rate", communities.memetic.mutation_rate, "per-vertex mutation rate")
        ->capture_default_str();
    communities_cmd
        ->add_option("--local-sweeps", communities.memetic.local_search_sweeps,
                     "local search sweep budget per individual")
        ->capture_default_str();
    communities_cmd->add_option("--elite", communities.memetic.elite_count, "elite count")
        ->capture_default_str();
    communities_cmd->add_option("--threads", communities.memetic.threads, "worker threads")
        ->capture_default_str();
    communities_cmd
        ->add_option("--inorm-divisor", communities.inorm_divisor, "importance normalization divisor")
        ->check(CLI::IsMember({1, 2}))
        ->capture_default_str();
    communities_cmd->add_option("--out", communities.out_dir, "output directory")
        ->capture_default_str();

    ExportOptions exp;
    auto* export_cmd = app.add_subcommand("export", "Write the graph as GEXF, DOT or CSV");
    export_cmd->add_option("snapshot", exp.snapshot_path, "graph snapshot")->required();
    export_cmd->add_option("--format", exp.format, "output format")
        ->check(CLI::IsMember({"gexf", "dot", "csv"}))
        ->capture_default_str();
    export_cmd->add_option("--with-communities", exp.communities_path,
                           "attach community labels from a communities.csv");
    std::string size_by;
    export_cmd->add_option("--size-by", size_by, "scale node size by this metric")
        ->check(CLI::IsMember({"importance"}));
    export_cmd->add_option("--inorm-divisor", exp.inorm_divisor, "importance normalization divisor")
        ->check(CLI::IsMember({1, 2}))
        ->capture_default_str();
    export_cmd->add_option("--out", exp.out_dir, "output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(ingest_cmd)) {
            return cmd_ingest(ingest);
        }
        if (app.got_subcommand(stats_cmd)) {
            return cmd_stats(stats);
        }
        if (app.got_subcommand(rank_cmd)) {
            rank.by = rank_by == "degree" ? RankBy::Degree : RankBy::Importance;
            if (!rank_out.empty()) {
                rank.out_dir = rank_out;
            }
            return cmd_rank(rank);
        }
        if (app.got_subcommand(communities_cmd)) {
            if (top_core >= 0) {
                communities.top_core = static_cast<std::size_t>(top_core);
            }
            return cmd_communities(communities);
        }
        if (app.got_subcommand(export_cmd)) {
            exp.size_by_importance = size_by == "importance";
            return cmd_export(exp);
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitAnalysis;
    }
    return kExitUsage;
}

} // namespace twinet::cli
