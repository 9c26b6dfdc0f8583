#pragma once

#include <stdexcept>
#include <string>

namespace twinet {

/// Unreadable or malformed input data (files, snapshots, seed lists).
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A computation that is undefined for the given graph, e.g. modularity of an
/// edgeless graph or importance normalization when no user has any followers.
class AnalysisError : public std::runtime_error {
public:
    explicit AnalysisError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace twinet
