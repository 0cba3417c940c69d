#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "urysohn/space.hpp"

namespace urysohn {

enum class ArrowStatus { Holds, Fails, Unknown };
const char* to_string(ArrowStatus status);

struct ArrowStats {
    std::size_t a_copies = 0;
    std::size_t b_copies = 0;
    std::uint64_t nodes = 0;  // colorings (exhaustive) or search nodes (backtracking)
    bool exhaustive = false;
};

struct ArrowVerdict {
    ArrowStatus status = ArrowStatus::Unknown;
    /// Copies of A in C (sorted point lists); colorings index into this.
    std::vector<std::vector<std::size_t>> a_copies;
    /// Present iff Fails: a color per A-copy with no monochromatic copy of B.
    std::optional<std::vector<unsigned>> bad_coloring;
    ArrowStats stats;
};

/// C -> (B)^A_k. When k^(#A-copies - 1) <= budget every coloring with the
/// first copy fixed to color 0 is enumerated; otherwise a backtracking search
/// for a bad coloring runs with per-B-copy color counts, up to `budget`
/// nodes. Holds is only reported after a complete search. The verdict and
/// the reported coloring (lexicographically least) do not depend on `jobs`.
/// Throws NotEmbeddable unless A embeds in B and B in C.
ArrowVerdict arrow(const Space& c, const Space& b, const Space& a, unsigned k, std::uint64_t budget = 10'000'000,
                   unsigned jobs = 1);

/// Index of a copy of B (as listed by copies_of(c, b)) whose A-copies all
/// share a color under `coloring`, or nullopt if none is monochromatic.
std::optional<std::size_t> monochromatic_copy(const Space& c, const Space& b, const Space& a,
                                              const std::vector<std::vector<std::size_t>>& a_copies,
                                              const std::vector<unsigned>& coloring);

/// Only the identity automorphism.
bool is_rigid(const Space& x);

}  // namespace urysohn
