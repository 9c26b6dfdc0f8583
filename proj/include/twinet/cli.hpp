#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "twinet/community.hpp"
#include "twinet/metrics.hpp"

namespace twinet::cli {

// Exit codes: 0 success, 1 usage error, 2 input error, 3 analysis error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitAnalysis = 3;

inline constexpr std::uint64_t kDefaultSeed = 42;

struct IngestOptions {
    std::string records_path;
    std::string seeds_path;
    std::string out_dir = ".";
};

struct StatsOptions {
    std::string snapshot_path;
};

struct RankOptions {
    std::string snapshot_path;
    RankBy by = RankBy::Degree;
    std::size_t top = 20;
    int inorm_divisor = 2;
    std::optional<std::string> out_dir;
};

struct CommunitiesOptions {
    std::string snapshot_path;
    std::optional<std::size_t> top_core;
    MemeticConfig memetic;
    int inorm_divisor = 2;
    std::string out_dir = ".";
};

struct ExportOptions {
    std::string snapshot_path;
    std::string format = "gexf"; // gexf | dot | csv
    std::optional<std::string> communities_path;
    bool size_by_importance = false;
    int inorm_divisor = 2;
    std::string out_dir = ".";
};

int cmd_ingest(const IngestOptions& opt);
int cmd_stats(const StatsOptions& opt);
int cmd_rank(const RankOptions& opt);
int cmd_communities(const CommunitiesOptions& opt);
int cmd_export(const ExportOptions& opt);

/// Parses argv and dispatches to the subcommands, mapping errors onto the
/// exit-code contract above.
int run(int argc, const char* const* argv);

} // namespace twinet::cli
