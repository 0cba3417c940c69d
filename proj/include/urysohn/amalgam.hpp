#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "urysohn/space.hpp"

namespace urysohn {

enum class Relation { Before, After };

/// `point` must come Before/After `other` in the extended order.
struct OrderConstraint {
    std::size_t point;
    Relation relation;
    std::size_t other;
};

/// Total order on `n` points extending `base_order` (a chain over some of
/// them) and every constraint. Kahn's algorithm: the next base point is
/// emitted as soon as it is free, otherwise the free new point with the
/// smallest label. Throws CyclicConstraints naming a cycle.
std::vector<std::size_t> extend_order(std::size_t n, std::span<const std::size_t> base_order,
                                      std::span<const OrderConstraint> constraints,
                                      std::span<const std::string> labels);

/// Same, on a space whose points not listed in `base_order` are new.
Space extend_order(const Space& x, std::span<const std::size_t> base_order,
                   std::span<const OrderConstraint> constraints);

struct Amalgam {
    Space space;
    /// Index in `space` of every point of C (overlap points map into B).
    std::vector<std::size_t> c_embedding;
};

/// Free amalgam of `b` and `c` over the common substructure given by
/// `overlap` as (point of b, point of c) pairs. Points of b keep their
/// indices; the remaining points of c follow in index order. Cross distances
/// are min over the overlap of d_b(x, z) + d_c(z, y), or diam(b) + diam(c)
/// when the overlap is empty.
///
/// When both inputs are ordered the result order extends b's order with the
/// constraints that c's order imposes on its new points, so both embed
/// order-preservingly.
Amalgam free_amalgam(const Space& b, const Space& c, std::span<const std::pair<std::size_t, std::size_t>> overlap);

/// Replaces every distance by min(d, cap). Truncation keeps the triangle inequality.
Space cap_distances(const Space& x, const ExactReal& cap);

}  // namespace urysohn
