#include "twinet/ingest.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "twinet/errors.hpp"

namespace twinet {

namespace {

using nlohmann::json;

std::string get_string(const json& j, const char* field) {
    auto it = j.find(field);
    if (it == j.end() || it->is_null()) {
        return {};
    }
    if (it->is_string()) {
        return it->get<std::string>();
    }
    if (it->is_number_unsigned() || it->is_number_integer()) {
        return std::to_string(it->get<std::int64_t>());
    }
    throw InputError(std::string(field) + " must be a string");
}

std::uint64_t get_count(const json& j, const char* field) {
    auto it = j.find(field);
    if (it == j.end() || it->is_null()) {
        return 0;
    }
    if (it->is_number_unsigned()) {
        return it->get<std::uint64_t>();
    }
    if (it->is_number_integer()) {
        std::int64_t value = it->get<std::int64_t>();
        if (value < 0) {
            throw InputError(std::string(field) + " must be non-negative");
        }
        return static_cast<std::uint64_t>(value);
    }
    throw InputError(std::string(field) + " must be an integer");
}

bool get_bool(const json& j, const char* field) {
    auto it = j.find(field);
    if (it == j.end() || it->is_null()) {
        return false;
    }
    if (!it->is_boolean()) {
        throw InputError(std::string(field) + " must be a boolean");
    }
    return it->get<bool>();
}

std::vector<std::string> get_string_list(const json& j, const char* field) {
    std::vector<std::string> out;
    auto it = j.find(field);
    if (it == j.end() || it->is_null()) {
        return out;
    }
    if (!it->is_array()) {
        throw InputError(std::string(field) + " must be an array");
    }
    for (const json& item : *it) {
        if (!item.is_string()) {
            throw InputError(std::string(field) + " entries must be strings");
        }
        out.push_back(item.get<std::string>());
    }
    return out;
}

UserProfile parse_profile(const json& j) {
    UserProfile profile;
    profile.screen_name =
        InteractionGraph::normalize_key(VertexKind::User, get_string(j, "screen_name"));
    profile.display_name = get_string(j, "display_name");
    profile.followers_count = get_count(j, "followers_count");
    profile.friends_count = get_count(j, "friends_count");
    profile.verified = get_bool(j, "verified");
    profile.location = get_string(j, "location");
    return profile;
}

std::optional<TweetRecord::Reference> parse_reference(const json& j, const char* field) {
    auto it = j.find(field);
    if (it == j.end() || it->is_null()) {
        return std::nullopt;
    }
    if (!it->is_object()) {
        throw InputError(std::string(field) + " must be an object");
    }
    TweetRecord::Reference ref;
    ref.tweet_id = get_string(*it, "tweet_id");
    if (ref.tweet_id.empty()) {
        throw InputError(std::string(field) + " is missing tweet_id");
    }
    if (auto author = it->find("author"); author != it->end() && author->is_object()) {
        ref.author = parse_profile(*author);
    }
    return ref;
}

} // namespace

TweetRecord parse_record(std::string_view line) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) {
        throw InputError("malformed JSON");
    }
    if (!j.is_object()) {
        throw InputError("record is not a JSON object");
    }

    TweetRecord record;
    record.tweet_id = get_string(j, "tweet_id");
    if (record.tweet_id.empty()) {
        throw InputError("missing tweet_id");
    }

    auto author = j.find("author");
    if (author == j.end() || !author->is_object()) {
        throw InputError("missing author");
    }
    record.author = parse_profile(*author);
    if (record.author.screen_name.empty()) {
        throw InputError("missing author.screen_name");
    }

    record.text = get_string(j, "text");
    record.hashtags = get_string_list(j, "hashtags");
    record.urls = get_string_list(j, "urls");
    record.media_urls = get_string_list(j, "media_urls");
    record.captured_at = get_string(j, "captured_at");

    if (auto it = j.find("mentioned_users"); it != j.end() && !it->is_null()) {
        if (!it->is_array()) {
            throw InputError("mentioned_users must be an array");
        }
        for (const json& item : *it) {
            if (!item.is_object()) {
                throw InputError("mentioned_users entries must be objects");
            }
            TweetRecord::Mention mention;
            mention.screen_name =
                InteractionGraph::normalize_key(VertexKind::User, get_string(item, "screen_name"));
            if (mention.screen_name.empty()) {
                throw InputError("mention is missing screen_name");
            }
            mention.followers_count = get_count(item, "followers_count");
            mention.friends_count = get_count(item, "friends_count");
            record.mentioned_users.push_back(std::move(mention));
        }
    }

    record.retweet_of = parse_reference(j, "retweet_of");
    record.reply_to = parse_reference(j, "reply_to");
    record.quote_of = parse_reference(j, "quote_of");
    if (record.retweet_of && record.quote_of) {
        throw InputError("record cannot be both a retweet and a quote");
    }
    return record;
}

ReadReport read_records(std::istream& in,
                        const std::function<void(TweetRecord&&)>& on_record) {
    ReadReport report;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        ++report.total_lines;
        try {
            on_record(parse_record(line));
            ++report.parsed;
        } catch (const InputError& e) {
            report.errors.push_back(LineError{line_no, e.what()});
        }
    }
    return report;
}

GraphBuilder::GraphBuilder(std::span<const std::string> seed_handles) {
    for (const std::string& handle : seed_handles) {
        std::string normalized = InteractionGraph::normalize_key(VertexKind::User, handle);
        if (!normalized.empty()) {
            seeds_.insert(std::move(normalized));
        }
    }
}

VertexId GraphBuilder::add_user(const UserProfile& profile) {
    UserProfile tagged = profile;
    tagged.is_seed = seeds_.count(profile.screen_name) > 0;
    return graph_.add_vertex(VertexKind::User, profile.screen_name, tagged);
}

void GraphBuilder::ensure_posted(const UserProfile& author, VertexId tweet) {
    if (poster_.count(tweet) > 0 || author.screen_name.empty()) {
        return;
    }
    VertexId user = add_user(author);
    graph_.add_edge(user, tweet, EdgeKind::Posted, 1);
    poster_.emplace(tweet, user);
}

bool GraphBuilder::add(const TweetRecord& record) {
    if (!seen_ids_.insert(record.tweet_id).second) {
        ++duplicates_;
        return false;
    }

    VertexId tweet = graph_.add_vertex(VertexKind::Tweet, record.tweet_id);
    ensure_posted(record.author, tweet);

    for (const TweetRecord::Mention& mention : record.mentioned_users) {
        UserProfile profile;
        profile.screen_name = mention.screen_name;
        profile.followers_count = mention.followers_count;
        profile.friends_count = mention.friends_count;
        VertexId user = add_user(profile);
        graph_.add_edge(tweet, user, EdgeKind::Mentions, 1);
    }
    for (const std::string& tag : record.hashtags) {
        VertexId hashtag = graph_.add_vertex(VertexKind::Hashtag, tag);
        graph_.add_edge(tweet, hashtag, EdgeKind::HasHashtag, 1);
    }
    for (const std::string& url : record.urls) {
        VertexId link = graph_.add_vertex(VertexKind::Link, url);
        graph_.add_edge(tweet, link, EdgeKind::HasLink, 1);
    }
    for (const std::string& url : record.media_urls) {
        VertexId media = graph_.add_vertex(VertexKind::Media, url);
        graph_.add_edge(tweet, media, EdgeKind::HasMedia, 1);
    }

    auto link_reference = [&](const std::optional<TweetRecord::Reference>& ref, EdgeKind kind) {
        // A reference without an author gives no flow information; skip it so
        // every tweet vertex keeps exactly one poster.
        if (!ref || ref->author.screen_name.empty()) {
            return;
        }
        VertexId target = graph_.add_vertex(VertexKind::Tweet, ref->tweet_id);
        ensure_posted(ref->author, target);
        graph_.add_edge(tweet, target, kind, 1);
    };
    link_reference(record.retweet_of, EdgeKind::RetweetOf);
    link_reference(record.reply_to, EdgeKind::ReplyTo);
    link_reference(record.quote_of, EdgeKind::QuoteOf);

    if (!record.captured_at.empty()) {
        if (first_captured_.empty() || record.captured_at < first_captured_) {
            first_captured_ = record.captured_at;
        }
        if (last_captured_.empty() || record.captured_at > last_captured_) {
            last_captured_ = record.captured_at;
        }
    }
    return true;
}

InteractionGraph GraphBuilder::finish() {
    graph_.set_capture_window(first_captured_, last_captured_);
    InteractionGraph out = std::move(graph_);
    graph_ = InteractionGraph();
    seen_ids_.clear();
    poster_.clear();
    duplicates_ = 0;
    first_captured_.clear();
    last_captured_.clear();
    return out;
}

InteractionGraph build_graph(std::span<const TweetRecord> records,
                             std::span<const std::string> seed_handles) {
    GraphBuilder builder(seed_handles);
    for (const TweetRecord& record : records) {
        builder.add(record);
    }
    return builder.finish();
}

CaptureStats capture_stats(const InteractionGraph& g) {
    CaptureStats stats;
    for (std::size_t k = 0; k < kVertexKindCount; ++k) {
        stats.kind_counts[k] = g.kind_count(static_cast<VertexKind>(k));
    }
    stats.total_vertices = g.vertex_count();
    stats.total_edges = g.edge_count();
    stats.first_captured_at = g.capture_window().first;
    stats.last_captured_at = g.capture_window().second;
    return stats;
}

void write_stats_csv(std::ostream& out, const CaptureStats& stats) {
    out << "kind,count\n";
    out << "Hashtag," << stats.count(VertexKind::Hashtag) << '\n';
    out << "Link," << stats.count(VertexKind::Link) << '\n';
    out << "Media," << stats.count(VertexKind::Media) << '\n';
    out << "Tweet," << stats.count(VertexKind::Tweet) << '\n';
    out << "User," << stats.count(VertexKind::User) << '\n';
    out << "Total," << stats.total_vertices << '\n';
}

std::vector<std::string> load_seed_list(std::istream& in) {
    std::vector<std::string> seeds;
    std::string line;
    while (std::getline(in, line)) {
        std::string normalized = InteractionGraph::normalize_key(VertexKind::User, line);
        if (normalized.empty() || normalized.front() == '#') {
            continue;
        }
        if (std::find(seeds.begin(), seeds.end(), normalized) == seeds.end()) {
            seeds.push_back(normalized);
        }
    }
    return seeds;
}

} // namespace twinet
