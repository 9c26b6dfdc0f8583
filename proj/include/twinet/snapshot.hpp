#pragma once

#include <iosfwd>
#include <string>

#include "twinet/graph.hpp"

namespace twinet {

/// Versioned binary graph snapshot so analysis commands never re-parse raw
/// records. Little-endian, magic "TWGS", format version 1. Saving and loading
/// round-trips the graph exactly: ids, edge order and profiles are preserved.
void save_snapshot(std::ostream& out, const InteractionGraph& g);
InteractionGraph load_snapshot(std::istream& in);

void save_snapshot_file(const std::string& path, const InteractionGraph& g);
InteractionGraph load_snapshot_file(const std::string& path);

} // namespace twinet
