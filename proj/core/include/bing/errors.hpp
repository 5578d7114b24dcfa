#pragma once

#include <stdexcept>
#include <string>

namespace bing {

// Evaluation or restriction outside a function's domain.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Clasp points violate c <= a <= b <= d for the mother function.
struct ClaspError : std::runtime_error {
    explicit ClaspError(const std::string& what) : std::runtime_error(what) {}
};

// Tree-structure misuse: re-expansion, missing node, non-ancestor chain.
struct TreeError : std::runtime_error {
    explicit TreeError(const std::string& what) : std::runtime_error(what) {}
};

// Plane-machinery failures: bad orientation, infeasible center, divergence cap.
struct GeometryError : std::runtime_error {
    explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

// Configuration rejected before any work starts.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace bing
