#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "deckrecon/graph.hpp"

namespace deckrecon {

/// Relabeling-invariant fingerprint: two graphs within the supported order
/// limit get equal codes iff they are isomorphic.
struct CanonicalCode {
    std::vector<std::uint8_t> bytes;

    auto operator<=>(const CanonicalCode&) const = default;

    std::string hex() const;
};

inline constexpr int kCanonicalOrderLimit = 64;

/// Canonical form by iterated equitable refinement plus backtracking over the
/// coarsest partition, with orbit pruning from discovered automorphisms.
/// Throws UnsupportedSizeError above order_limit (or 64, the packing limit).
CanonicalCode canonical_code(const Graph& g, int order_limit = kCanonicalOrderLimit);

} // namespace deckrecon
