#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "urysohn/amalgam.hpp"

namespace urysohn {

struct Budget {
    std::size_t max_points = 64;
    std::size_t max_pairs = 1'000'000;
};

/// A one-point extension of a subset X = (x_0 < x_1 < ...): the new point's
/// distance to each x_i and its order slot (0 = below every x_i). Unordered
/// spaces have the single slot 0.
struct OnePointExtension {
    std::vector<ExactReal> distances;
    std::size_t slot = 0;

    friend bool operator==(const OnePointExtension&, const OnePointExtension&) = default;
};

struct UnrealizedExtension {
    std::vector<std::size_t> subset;  // indices into the space, in order
    OnePointExtension extension;
};

struct ExtensionReport {
    std::size_t checked = 0;
    std::vector<UnrealizedExtension> unrealized;
    bool budget_exceeded = false;

    bool holds() const noexcept { return unrealized.empty() && !budget_exceeded; }
};

/// Points of `subset` sorted by order rank (by index when unordered).
std::vector<std::size_t> in_order(const Space& m, std::span<const std::size_t> subset);

/// All one-point extensions of the subset (given in order) with distances in
/// `d` that satisfy the triangle inequality. `budget` caps the number returned.
std::vector<OnePointExtension> enumerate_extensions(const Space& m, std::span<const std::size_t> subset,
                                                    const DistanceSet& d, std::size_t budget = 1'000'000);

/// The extensions of the whole space `x`, materialised as spaces with the new point last.
std::vector<Space> one_point_extensions(const Space& x, const DistanceSet& d, std::size_t budget = 1'000'000);

/// A point of `m` outside `subset` realising the extension, if any.
std::optional<std::size_t> find_realization(const Space& m, std::span<const std::size_t> subset,
                                            const OnePointExtension& ext);

/// For every subset of `base` (all points when empty) with at most `k`
/// points, every extension over `d` is looked up in `m`. Throws
/// BudgetExceeded when more than budget.max_pairs pairs would be checked.
ExtensionReport extension_property_check(const Space& m, const DistanceSet& d, std::size_t k,
                                         std::span<const std::size_t> base = {}, const Budget& budget = {});

struct SaturateResult {
    Space space;
    ExtensionReport report;  // unrealized lists pairs skipped for budget
};

/// One round of realisation: every extension of every <= k subset of the
/// input (or of `base`) gets a witness, added by free amalgamation and
/// capping when no existing point realises it. Existing points, distances
/// and their order are never changed, so rerunning over the same base adds nothing.
SaturateResult saturate(const Space& m, const DistanceSet& d, std::size_t k, const Budget& budget = {},
                        std::span<const std::size_t> base = {});

struct IsometryExtension {
    Space space;
    PartialIsometry map;
    bool added_point = false;
};

/// Forth step: extends the order-preserving partial isometry `p` of `m` to
/// `x`, reusing a point of `m` with the right profile (x itself first) or
/// adding one.
IsometryExtension extend_partial_isometry(const Space& m, const PartialIsometry& p, std::size_t x,
                                          const DistanceSet& d);
/// Back step: puts `y` into the range of `p`.
IsometryExtension extend_partial_isometry_back(const Space& m, const PartialIsometry& p, std::size_t y,
                                               const DistanceSet& d);

struct Perturbation {
    Space space;
    std::vector<std::size_t> images;  // y_i' for each pair, in input order
    ExactReal delta;
    Space witness;  // the auxiliary space on the y's and their copies
};

/// Moves the targets y_i of the partial isometry x_i -> y_i by exactly delta
/// (the largest value of `d` below eps) so that x_i -> y_i' is also
/// order-preserving.
Perturbation density_perturb(const Space& m, const PartialIsometry& pairs, const ExactReal& eps, const DistanceSet& d);

}  // namespace urysohn
