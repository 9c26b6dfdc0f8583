#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <sstream>

#include "support/fixtures.hpp"
#include "twinet/errors.hpp"
#include "twinet/exporter.hpp"
#include "twinet/ingest.hpp"
#include "twinet/snapshot.hpp"

using namespace twinet;

namespace {

InteractionGraph mention_pair_graph() {
    InteractionGraph g;
    UserProfile pa;
    pa.screen_name = "a";
    pa.followers_count = 10;
    UserProfile pb;
    pb.screen_name = "b";
    pb.followers_count = 5;
    VertexId a = g.add_vertex(VertexKind::User, "a", pa);
    VertexId b = g.add_vertex(VertexKind::User, "b", pb);
    VertexId t = g.add_vertex(VertexKind::Tweet, "t1");
    g.add_edge(a, t, EdgeKind::Posted, 1);
    g.add_edge(t, b, EdgeKind::Mentions, 1);
    return g;
}

} // namespace

TEST_CASE("gexf export carries schema, attributes and weights") {
    InteractionGraph g = mention_pair_graph();
    ExportAnnotations ann;
    ann.communities[0] = 0;
    ann.communities[1] = 1;
    std::ostringstream out;
    write_gexf(out, g, ann);
    std::string text = out.str();
    CHECK(text.find("http://www.gexf.net/1.2draft") != std::string::npos);
    CHECK(text.find("defaultedgetype=\"directed\"") != std::string::npos);
    CHECK(text.find("title=\"kind\"") != std::string::npos);
    CHECK(text.find("title=\"community\"") != std::string::npos);
    CHECK(text.find("title=\"importance\"") != std::string::npos);
    CHECK(text.find("label=\"a\"") != std::string::npos);
    CHECK(text.find("weight=\"1\"") != std::string::npos);
}

TEST_CASE("gexf escapes markup in labels") {
    InteractionGraph g;
    VertexId t = g.add_vertex(VertexKind::Tweet, "t");
    VertexId l = g.add_vertex(VertexKind::Link, "https://x.example/?a=1&b=<2>\"q\"");
    UserProfile p;
    p.screen_name = "a";
    VertexId a = g.add_vertex(VertexKind::User, "a", p);
    g.add_edge(a, t, EdgeKind::Posted, 1);
    g.add_edge(t, l, EdgeKind::HasLink, 1);
    std::ostringstream out;
    write_gexf(out, g, {});
    std::string text = out.str();
    CHECK(text.find("&amp;b=&lt;2&gt;&quot;q&quot;") != std::string::npos);
    CHECK(text.find("a=1&b") == std::string::npos);
}

TEST_CASE("dot penwidth is proportional to weight with a 1.0 baseline") {
    SUBCASE("single edge") {
        InteractionGraph g = mention_pair_graph();
        std::ostringstream out;
        write_dot(out, g, {});
        CHECK(out.str().find("penwidth=1.000000") != std::string::npos);
    }

    SUBCASE("heaviest edge gets the largest penwidth") {
        InteractionGraph g;
        UserProfile p;
        p.screen_name = "a";
        VertexId a = g.add_vertex(VertexKind::User, "a", p);
        VertexId b = g.add_vertex(VertexKind::User, "b");
        VertexId c = g.add_vertex(VertexKind::User, "c");
        g.add_edge(a, b, EdgeKind::Interacts, 1);
        g.add_edge(b, c, EdgeKind::Interacts, 5);
        std::ostringstream out;
        write_dot(out, g, {});
        std::string text = out.str();
        CHECK(text.find("penwidth=1.000000") != std::string::npos);
        CHECK(text.find("penwidth=5.000000") != std::string::npos);
    }
}

TEST_CASE("dot node width scales importance into [0.1, 2.0]") {
    InteractionGraph g;
    UserProfile big;
    big.screen_name = "big";
    big.followers_count = 100;
    UserProfile small;
    small.screen_name = "small";
    small.followers_count = 1;
    VertexId a = g.add_vertex(VertexKind::User, "big", big);
    VertexId b = g.add_vertex(VertexKind::User, "small", small);
    g.add_edge(a, b, EdgeKind::Interacts, 1);
    g.add_edge(b, a, EdgeKind::Interacts, 1);

    ExportAnnotations ann;
    ann.size_by_importance = true;
    std::ostringstream out;
    write_dot(out, g, ann);
    std::string text = out.str();
    CHECK(text.find("width=2.000000") != std::string::npos);
    CHECK(text.find("width=0.100000") != std::string::npos);
}

TEST_CASE("edge csv round-trips the projection") {
    testsupport::FixtureSpec spec;
    spec.records = 80;
    spec.seed = 21;
    testsupport::Fixture fixture = testsupport::synthetic_capture(spec);
    GraphBuilder builder(fixture.seeds);
    for (const std::string& line : fixture.lines) {
        builder.add(parse_record(line));
    }
    InteractionGraph projection = user_projection(builder.finish());

    std::ostringstream out;
    write_edge_csv(out, projection);

    // Re-read the CSV by hand and compare weighted edges keyed by name.
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "src_key,dst_key,kind,weight");
    std::map<std::pair<std::string, std::string>, std::uint64_t> parsed;
    while (std::getline(in, line)) {
        auto first = line.find(',');
        auto second = line.find(',', first + 1);
        auto third = line.find(',', second + 1);
        REQUIRE(third != std::string::npos);
        CHECK(line.substr(second + 1, third - second - 1) == "Interacts");
        parsed[{line.substr(0, first), line.substr(first + 1, second - first - 1)}] =
            std::stoull(line.substr(third + 1));
    }
    std::map<std::pair<std::string, std::string>, std::uint64_t> expected;
    for (const Edge& e : projection.edges()) {
        expected[{projection.key(e.src), projection.key(e.dst)}] = e.weight;
    }
    CHECK(parsed == expected);
}

TEST_CASE("communities csv round-trips through the loader") {
    InteractionGraph g = mention_pair_graph();
    std::vector<std::uint32_t> labels = {0, 1, 0};
    std::ostringstream out;
    write_communities_csv(out, g, labels);

    std::istringstream in(out.str());
    auto loaded = load_communities_csv(in, g);
    REQUIRE(loaded.size() == 3);
    CHECK(loaded[0] == 0);
    CHECK(loaded[1] == 1);
    CHECK(loaded[2] == 0);
}

TEST_CASE("communities csv referencing unknown vertices is an input error") {
    InteractionGraph g = mention_pair_graph();
    std::istringstream in("vertex_key,kind,community\nghost,User,0\n");
    CHECK_THROWS_AS(load_communities_csv(in, g), InputError);
    std::istringstream in2("vertex_key,kind,community\na,Nonsense,0\n");
    CHECK_THROWS_AS(load_communities_csv(in2, g), InputError);
}

TEST_CASE("snapshot round-trip preserves the graph exactly") {
    testsupport::FixtureSpec spec;
    spec.records = 50;
    spec.seed = 33;
    testsupport::Fixture fixture = testsupport::synthetic_capture(spec);
    GraphBuilder builder(fixture.seeds);
    for (const std::string& line : fixture.lines) {
        builder.add(parse_record(line));
    }
    InteractionGraph g = builder.finish();

    std::stringstream buffer;
    save_snapshot(buffer, g);
    InteractionGraph loaded = load_snapshot(buffer);

    REQUIRE(loaded.vertex_count() == g.vertex_count());
    REQUIRE(loaded.edge_count() == g.edge_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        CHECK(loaded.key(v) == g.key(v));
        CHECK(loaded.kind(v) == g.kind(v));
        const UserProfile* original = g.profile(v);
        const UserProfile* copy = loaded.profile(v);
        REQUIRE((original == nullptr) == (copy == nullptr));
        if (original != nullptr) {
            CHECK(copy->followers_count == original->followers_count);
            CHECK(copy->friends_count == original->friends_count);
            CHECK(copy->is_seed == original->is_seed);
            CHECK(copy->display_name == original->display_name);
        }
    }
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        CHECK(loaded.edges()[i].src == g.edges()[i].src);
        CHECK(loaded.edges()[i].dst == g.edges()[i].dst);
        CHECK(loaded.edges()[i].kind == g.edges()[i].kind);
        CHECK(loaded.edges()[i].weight == g.edges()[i].weight);
    }
    CHECK(loaded.capture_window() == g.capture_window());

    // Serialization is canonical: saving the loaded graph is byte-identical.
    std::stringstream again;
    save_snapshot(again, loaded);
    CHECK(again.str() == buffer.str());
}

TEST_CASE("snapshot loader rejects garbage") {
    std::stringstream bad_magic("NOPE....");
    CHECK_THROWS_AS(load_snapshot(bad_magic), InputError);

    InteractionGraph g = mention_pair_graph();
    std::stringstream buffer;
    save_snapshot(buffer, g);
    std::string bytes = buffer.str();
    std::stringstream truncated(bytes.substr(0, bytes.size() / 2));
    CHECK_THROWS_AS(load_snapshot(truncated), InputError);
}
