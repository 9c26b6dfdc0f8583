#pragma once

// Synthetic JSON-lines capture fixtures. The manifest is bookkept with plain
// sets while generating, independent of the graph builder it later checks.

#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace testsupport {

struct FixtureManifest {
    std::set<std::string> users;
    std::set<std::string> tweets;
    std::set<std::string> hashtags;
    std::set<std::string> links;
    std::set<std::string> media;
    std::string first_captured;
    std::string last_captured;

    std::size_t total() const {
        return users.size() + tweets.size() + hashtags.size() + links.size() + media.size();
    }
};

struct Fixture {
    std::vector<std::string> lines;
    FixtureManifest manifest;
    std::vector<std::string> seeds;
};

struct FixtureSpec {
    std::size_t records = 100;
    std::size_t author_pool = 30;
    std::size_t hashtag_pool = 25;
    std::size_t link_pool = 15;
    std::size_t media_pool = 10;
    double mention_prob = 0.6;
    double hashtag_prob = 0.7;
    double link_prob = 0.35;
    double media_prob = 0.25;
    double reference_prob = 0.3;
    std::uint64_t seed = 1;
};

inline std::string fixture_timestamp(std::size_t i) {
    char buffer[40];
    // 61 capture days starting 2018-08-03.
    std::size_t day = i % 61;
    std::size_t hour = i % 24;
    std::size_t month = 8 + (3 + day > 31 ? 1 : 0) * 0; // resolved below
    std::size_t day_of_month = 3 + day;
    month = 8;
    while (day_of_month > 31) {
        day_of_month -= 31;
        month += 1;
    }
    std::snprintf(buffer, sizeof(buffer), "2018-%02zu-%02zuT%02zu:00:00Z", month, day_of_month,
                  hour);
    return buffer;
}

inline Fixture synthetic_capture(const FixtureSpec& spec) {
    using nlohmann::json;
    Fixture fixture;
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    auto user_name = [&](std::size_t idx) { return "user" + std::to_string(idx); };
    std::uniform_int_distribution<std::size_t> pick_author(0, spec.author_pool - 1);

    std::vector<std::string> record_authors; // author of records[i]

    for (std::size_t i = 0; i < spec.records; ++i) {
        json record;
        std::string tweet_id = "tw" + std::to_string(i);
        record["tweet_id"] = tweet_id;
        fixture.manifest.tweets.insert(tweet_id);

        std::size_t author_idx = pick_author(rng);
        std::string author = user_name(author_idx);
        record_authors.push_back(author);
        fixture.manifest.users.insert(author);
        record["author"] = {
            {"screen_name", author},
            {"display_name", "User " + std::to_string(author_idx)},
            {"followers_count", 100 + author_idx * 13},
            {"friends_count", 10 + author_idx * 3},
            {"verified", author_idx % 7 == 0},
            {"location", author_idx % 3 == 0 ? "Brasil" : ""},
        };
        record["text"] = "post " + std::to_string(i);

        json hashtags = json::array();
        if (unit(rng) < spec.hashtag_prob) {
            std::size_t count = 1 + static_cast<std::size_t>(unit(rng) * 2.0);
            for (std::size_t h = 0; h < count; ++h) {
                std::size_t idx =
                    std::uniform_int_distribution<std::size_t>(0, spec.hashtag_pool - 1)(rng);
                std::string tag = "tag" + std::to_string(idx);
                hashtags.push_back("#" + tag);
                fixture.manifest.hashtags.insert(tag); // normalized form
            }
        }
        record["hashtags"] = hashtags;

        json urls = json::array();
        if (unit(rng) < spec.link_prob) {
            std::size_t idx = std::uniform_int_distribution<std::size_t>(0, spec.link_pool - 1)(rng);
            std::string url = "https://example.org/page" + std::to_string(idx);
            urls.push_back(url);
            fixture.manifest.links.insert(url);
        }
        record["urls"] = urls;

        json media = json::array();
        if (unit(rng) < spec.media_prob) {
            std::size_t idx =
                std::uniform_int_distribution<std::size_t>(0, spec.media_pool - 1)(rng);
            std::string url = "https://img.example.org/m" + std::to_string(idx) + ".png";
            media.push_back(url);
            fixture.manifest.media.insert(url);
        }
        record["media_urls"] = media;

        json mentions = json::array();
        if (unit(rng) < spec.mention_prob) {
            std::size_t idx = pick_author(rng);
            std::string mentioned = user_name(idx);
            fixture.manifest.users.insert(mentioned);
            mentions.push_back({{"screen_name", mentioned},
                                {"followers_count", 100 + idx * 13},
                                {"friends_count", 10 + idx * 3}});
        }
        record["mentioned_users"] = mentions;

        if (i > 0 && unit(rng) < spec.reference_prob) {
            std::size_t target =
                std::uniform_int_distribution<std::size_t>(0, i - 1)(rng);
            json ref = {{"tweet_id", "tw" + std::to_string(target)},
                        {"author", {{"screen_name", record_authors[target]}}}};
            double which = unit(rng);
            if (which < 0.5) {
                record["retweet_of"] = ref;
            } else if (which < 0.8) {
                record["reply_to"] = ref;
            } else {
                record["quote_of"] = ref;
            }
        }

        std::string captured = fixture_timestamp(i);
        record["captured_at"] = captured;
        if (fixture.manifest.first_captured.empty() ||
            captured < fixture.manifest.first_captured) {
            fixture.manifest.first_captured = captured;
        }
        if (captured > fixture.manifest.last_captured) {
            fixture.manifest.last_captured = captured;
        }

        fixture.lines.push_back(record.dump());
    }

    fixture.seeds = {user_name(0), user_name(1)};
    return fixture;
}

} // namespace testsupport
