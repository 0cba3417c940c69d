#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "urysohn/distance_set.hpp"

namespace urysohn {

/// A finite metric space with exact distances, an optional strict linear
/// order and an optional binding to a distance value set.
///
/// Points are addressed by index; labels only matter for I/O and for the
/// deterministic tie-break of order extension. The order is stored as a
/// permutation listing point indices from least to greatest.
class Space {
public:
    Space() = default;
    /// Checks shapes only (square matrix, order length); use validate() for the axioms.
    Space(std::vector<std::string> labels, std::vector<std::vector<ExactReal>> dist,
          std::optional<std::vector<std::size_t>> order = std::nullopt,
          std::optional<DistanceSet> delta = std::nullopt);

    std::size_t size() const noexcept { return labels_.size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    std::optional<std::size_t> find(const std::string& label) const;
    std::size_t index_of(const std::string& label) const;

    const ExactReal& d(std::size_t i, std::size_t j) const { return dist_[i * size() + j]; }
    void set_distance(std::size_t i, std::size_t j, ExactReal value);
    ExactReal diameter() const;

    bool ordered() const noexcept { return order_.has_value(); }
    /// Least to greatest; empty when unordered.
    std::span<const std::size_t> order() const noexcept;
    std::size_t rank(std::size_t i) const { return rank_.at(i); }
    bool less(std::size_t i, std::size_t j) const { return rank_.at(i) < rank_.at(j); }
    void set_order(std::optional<std::vector<std::size_t>> order);

    const std::optional<DistanceSet>& delta() const noexcept { return delta_; }
    void bind(std::optional<DistanceSet> delta) { delta_ = std::move(delta); }

    /// Appends a point with the given distances to the existing points. An
    /// ordered space becomes unordered until set_order() is called again.
    std::size_t add_point(std::string label, std::span<const ExactReal> distances);

    friend bool operator==(const Space&, const Space&) = default;

private:
    std::vector<std::string> labels_;
    std::vector<ExactReal> dist_;
    std::optional<std::vector<std::size_t>> order_;
    std::vector<std::size_t> rank_;
    std::optional<DistanceSet> delta_;
};

/// Builds a space from a symmetric distance function over `n` points labelled p0, p1, ...
Space make_space(std::size_t n, const std::function<ExactReal(std::size_t, std::size_t)>& dist,
                 bool ordered = true);

enum class ViolationKind { NonzeroDiagonal, Asymmetric, NonPositive, Triangle, NotInDelta, BadOrder };
const char* to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::vector<std::size_t> witness;  // point indices
    std::optional<ExactReal> value;
};

/// Metric axioms, Delta membership (when bound) and order totality; first violation wins.
std::optional<Violation> validate(const Space& x);

/// Induced substructure on `points` (kept in the given sequence).
Space induced(const Space& x, std::span<const std::size_t> points);

/// Every subset of `c` whose induced substructure is isomorphic to `a`, as
/// sorted index lists in lexicographic order. Both spaces ordered: the
/// order-rank bijection is the only candidate; otherwise any isometry counts.
std::vector<std::vector<std::size_t>> copies_of(const Space& c, const Space& a);

/// An isomorphism x -> y as an index map, or nullopt. Both ordered: order-rank
/// matching; otherwise backtracking with distance-multiset pruning.
std::optional<std::vector<std::size_t>> isomorphic(const Space& x, const Space& y);

/// Exhaustive automorphism enumeration by backtracking (order-preserving when
/// x is ordered). Stops after `limit` automorphisms; returns how many were found.
std::size_t count_automorphisms(const Space& x, std::size_t limit = static_cast<std::size_t>(-1));

struct PartialIsometry {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;

    std::optional<std::size_t> image(std::size_t x) const;
    std::optional<std::size_t> preimage(std::size_t y) const;
    PartialIsometry inverse() const;
};

struct IsometryStatus {
    bool injective = true;
    bool isometric = true;
    bool order_preserving = true;  // vacuous when either space is unordered

    bool ok() const noexcept { return injective && isometric && order_preserving; }
};

IsometryStatus inspect(const PartialIsometry& p, const Space& source, const Space& target);
inline IsometryStatus inspect(const PartialIsometry& p, const Space& x) { return inspect(p, x, x); }

struct PeriodicFixed {
    std::vector<std::size_t> periodic;  // Z(p), sorted
    std::vector<std::size_t> fixed;     // F(p), sorted
};

/// Points whose orbit stays in dom(p) and returns to itself; fixed points.
PeriodicFixed periodic_fixed(const PartialIsometry& p);

}  // namespace urysohn
