#include "twinet/snapshot.hpp"

#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

#include "twinet/errors.hpp"

namespace twinet {

namespace {

constexpr char kMagic[4] = {'T', 'W', 'G', 'S'};
constexpr std::uint8_t kVersion = 1;

void put_u8(std::ostream& out, std::uint8_t value) {
    out.put(static_cast<char>(value));
}

void put_u32(std::ostream& out, std::uint32_t value) {
    char bytes[4];
    for (int i = 0; i < 4; ++i) {
        bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
    }
    out.write(bytes, 4);
}

void put_u64(std::ostream& out, std::uint64_t value) {
    char bytes[8];
    for (int i = 0; i < 8; ++i) {
        bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
    }
    out.write(bytes, 8);
}

void put_string(std::ostream& out, const std::string& s) {
    if (s.size() > std::numeric_limits<std::uint32_t>::max()) {
        throw InputError("string too long for snapshot");
    }
    put_u32(out, static_cast<std::uint32_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::uint8_t get_u8(std::istream& in) {
    int c = in.get();
    if (c == EOF) {
        throw InputError("truncated snapshot");
    }
    return static_cast<std::uint8_t>(c);
}

std::uint32_t get_u32(std::istream& in) {
    char bytes[4];
    if (!in.read(bytes, 4)) {
        throw InputError("truncated snapshot");
    }
    std::uint32_t value = 0;
    for (int i = 0; i < 4; ++i) {
        value |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[i])) << (8 * i);
    }
    return value;
}

std::uint64_t get_u64(std::istream& in) {
    char bytes[8];
    if (!in.read(bytes, 8)) {
        throw InputError("truncated snapshot");
    }
    std::uint64_t value = 0;
    for (int i = 0; i < 8; ++i) {
        value |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[i])) << (8 * i);
    }
    return value;
}

std::string get_string(std::istream& in) {
    std::uint32_t size = get_u32(in);
    std::string s(size, '\0');
    if (size > 0 && !in.read(s.data(), size)) {
        throw InputError("truncated snapshot");
    }
    return s;
}

} // namespace

void save_snapshot(std::ostream& out, const InteractionGraph& g) {
    out.write(kMagic, 4);
    put_u8(out, kVersion);
    put_u64(out, g.vertex_count());
    put_u64(out, g.edge_count());
    put_string(out, g.capture_window().first);
    put_string(out, g.capture_window().second);

    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        put_u8(out, static_cast<std::uint8_t>(g.kind(v)));
        put_string(out, g.key(v));
        const UserProfile* p = g.profile(v);
        put_u8(out, p != nullptr ? 1 : 0);
        if (p != nullptr) {
            put_string(out, p->display_name);
            put_u64(out, p->followers_count);
            put_u64(out, p->friends_count);
            put_u8(out, p->verified ? 1 : 0);
            put_string(out, p->location);
            put_u8(out, p->is_seed ? 1 : 0);
        }
    }
    for (const Edge& e : g.edges()) {
        put_u32(out, e.src);
        put_u32(out, e.dst);
        put_u8(out, static_cast<std::uint8_t>(e.kind));
        put_u64(out, e.weight);
    }
    if (!out) {
        throw InputError("failed to write snapshot");
    }
}

InteractionGraph load_snapshot(std::istream& in) {
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
        throw InputError("not a graph snapshot (bad magic)");
    }
    std::uint8_t version = get_u8(in);
    if (version != kVersion) {
        throw InputError("unsupported snapshot version " + std::to_string(version));
    }
    std::uint64_t vertex_count = get_u64(in);
    std::uint64_t edge_count = get_u64(in);
    std::string first = get_string(in);
    std::string last = get_string(in);

    InteractionGraph g;
    for (std::uint64_t i = 0; i < vertex_count; ++i) {
        std::uint8_t kind_byte = get_u8(in);
        if (kind_byte >= kVertexKindCount) {
            throw InputError("invalid vertex kind in snapshot");
        }
        VertexKind kind = static_cast<VertexKind>(kind_byte);
        std::string key = get_string(in);
        std::optional<UserProfile> profile;
        if (get_u8(in) != 0) {
            UserProfile p;
            p.display_name = get_string(in);
            p.followers_count = get_u64(in);
            p.friends_count = get_u64(in);
            p.verified = get_u8(in) != 0;
            p.location = get_string(in);
            p.is_seed = get_u8(in) != 0;
            profile = std::move(p);
        }
        VertexId id = g.add_vertex(kind, key, profile);
        if (id != i) {
            throw InputError("snapshot contains duplicate vertices");
        }
    }
    for (std::uint64_t i = 0; i < edge_count; ++i) {
        std::uint32_t src = get_u32(in);
        std::uint32_t dst = get_u32(in);
        std::uint8_t kind_byte = get_u8(in);
        if (kind_byte >= kEdgeKindCount) {
            throw InputError("invalid edge kind in snapshot");
        }
        std::uint64_t weight = get_u64(in);
        try {
            g.add_edge(src, dst, static_cast<EdgeKind>(kind_byte), weight);
        } catch (const std::invalid_argument& e) {
            throw InputError(std::string("invalid edge in snapshot: ") + e.what());
        }
    }
    g.set_capture_window(std::move(first), std::move(last));
    return g;
}

void save_snapshot_file(const std::string& path, const InteractionGraph& g) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot open " + path + " for writing");
    }
    save_snapshot(out, g);
}

InteractionGraph load_snapshot_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open " + path);
    }
    return load_snapshot(in);
}

} // namespace twinet
