#pragma once

#include <stdexcept>
#include <string>

namespace approxdeg {

/// Malformed flags, rationals or files. CLI maps this to exit code 2.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// A construction would exceed the configured enumeration or LP size limit.
struct SizeError : std::runtime_error {
    explicit SizeError(const std::string& what) : std::runtime_error(what) {}
};

/// A point outside a function's promise domain was evaluated or injected.
struct PromiseError : std::runtime_error {
    explicit PromiseError(const std::string& what) : std::runtime_error(what) {}
};

/// An embedding or combiner was asked to do something its invariants forbid.
struct ConstructionError : std::runtime_error {
    explicit ConstructionError(const std::string& what) : std::runtime_error(what) {}
};

/// Domain-size guard: explicit domains are capped at this many points unless
/// the APPROXDEG_SIZE_LIMIT environment variable overrides it.
std::size_t domain_size_limit();

/// Guard for LP solves: (basis columns) x (domain points) must stay below this.
std::size_t lp_size_limit();

}  // namespace approxdeg
