#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "twinet/graph.hpp"

namespace twinet {

/// One captured interaction, parsed from a JSON-lines record. Referenced
/// tweets (retweet/reply/quote targets) carry their id and author so the
/// information flow through them can be reconstructed.
struct TweetRecord {
    struct Mention {
        std::string screen_name;
        std::uint64_t followers_count = 0;
        std::uint64_t friends_count = 0;
    };
    struct Reference {
        std::string tweet_id;
        UserProfile author; // screen_name may be empty when the capture lacks it
    };

    std::string tweet_id;
    UserProfile author;
    std::string text;
    std::vector<std::string> hashtags;
    std::vector<std::string> urls;
    std::vector<std::string> media_urls;
    std::vector<Mention> mentioned_users;
    std::optional<Reference> retweet_of;
    std::optional<Reference> reply_to;
    std::optional<Reference> quote_of;
    std::string captured_at; // ISO-8601 UTC, may be empty
};

/// Parses one JSON object into a TweetRecord. Unknown fields are ignored and
/// optional fields default. Throws InputError on malformed JSON, a missing
/// tweet_id or author screen_name, or a record that is both retweet and quote.
TweetRecord parse_record(std::string_view line);

struct LineError {
    std::size_t line_no = 0; // 1-based
    std::string message;
};

struct ReadReport {
    std::size_t total_lines = 0; // non-blank lines seen
    std::size_t parsed = 0;
    std::vector<LineError> errors;
};

/// Streams records out of a JSON-lines source, invoking on_record per good
/// line. Bad lines are collected with their line number and skipped; blank
/// lines are ignored.
ReadReport read_records(std::istream& in,
                        const std::function<void(TweetRecord&&)>& on_record);

/// Incrementally builds the interaction graph from records. Records sharing a
/// previously seen tweet_id are skipped whole, so re-capturing a window never
/// inflates edge weights. Vertex ids are assigned in first-appearance order,
/// making the build deterministic for a fixed record stream.
class GraphBuilder {
public:
    explicit GraphBuilder(std::span<const std::string> seed_handles);

    /// Returns false when the record is a duplicate and was skipped.
    bool add(const TweetRecord& record);

    std::size_t duplicate_count() const { return duplicates_; }

    /// Finalizes and returns the graph; the builder is left empty.
    InteractionGraph finish();

private:
    VertexId add_user(const UserProfile& profile);
    void ensure_posted(const UserProfile& author, VertexId tweet);

    InteractionGraph graph_;
    std::unordered_set<std::string> seen_ids_;
    std::unordered_set<std::string> seeds_;
    std::unordered_map<VertexId, VertexId> poster_; // tweet vertex -> author
    std::size_t duplicates_ = 0;
    std::string first_captured_;
    std::string last_captured_;
};

InteractionGraph build_graph(std::span<const TweetRecord> records,
                             std::span<const std::string> seed_handles);

/// Vertex census of a build, mirroring the per-kind capture table.
struct CaptureStats {
    std::array<std::size_t, kVertexKindCount> kind_counts{};
    std::size_t total_vertices = 0;
    std::size_t total_edges = 0;
    std::string first_captured_at;
    std::string last_captured_at;

    std::size_t count(VertexKind kind) const {
        return kind_counts[static_cast<std::size_t>(kind)];
    }
};

CaptureStats capture_stats(const InteractionGraph& g);

/// Emits the census as CSV rows `kind,count` (Hashtag, Link, Media, Tweet,
/// User, Total).
void write_stats_csv(std::ostream& out, const CaptureStats& stats);

/// Seed handles, one per line, '@' optional, case-insensitive; blank lines
/// and '#' comments are skipped.
std::vector<std::string> load_seed_list(std::istream& in);

} // namespace twinet
