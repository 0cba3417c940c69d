#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "urysohn/exact.hpp"

namespace urysohn {

/// A finite, sorted fragment of a distance value set.
///
/// `cap` is the supremum of the full set when bounded; std::nullopt means
/// unbounded. For unbounded fragments closure is only judged up to the
/// largest stored value (sums past it lie beyond the fragment's horizon).
class DistanceSet {
public:
    DistanceSet() = default;
    /// Sorts and checks the values; throws InvalidArgument on duplicates,
    /// non-positive values or values above the cap.
    explicit DistanceSet(std::vector<ExactReal> values, std::optional<ExactReal> cap = std::nullopt);

    const std::vector<ExactReal>& values() const noexcept { return values_; }
    const std::optional<ExactReal>& cap() const noexcept { return cap_; }
    bool bounded() const noexcept { return cap_.has_value(); }
    bool closed() const noexcept { return closed_; }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }

    bool contains(const ExactReal& x) const;
    /// Index of `x` in values(), if present.
    std::optional<std::size_t> index_of(const ExactReal& x) const;
    const ExactReal& min() const { return values_.front(); }
    const ExactReal& max() const { return values_.back(); }

    friend bool operator==(const DistanceSet&, const DistanceSet&) = default;

private:
    std::vector<ExactReal> values_;
    std::optional<ExactReal> cap_;
    bool closed_ = false;
};

struct ClosureCheck {
    bool closed = true;
    /// First pair (x <= y, lexicographic by index) whose truncated sum is missing.
    std::optional<std::pair<ExactReal, ExactReal>> violation;
};

/// Closure under the truncated sum min(x + y, cap).
ClosureCheck validate_closure(const DistanceSet& s);

/// Least superset of `s` closed under truncated sums, restricted to (0, bound].
/// Throws BudgetExceeded when the result would pass `max_size` values.
DistanceSet close(const DistanceSet& s, const ExactReal& bound, std::size_t max_size = 100000);

/// |x - y| <= z <= x + y with all three in `s`.
bool delta_triangle(const ExactReal& x, const ExactReal& y, const ExactReal& z, const DistanceSet& s);
/// The inequality part alone; symmetric in its arguments.
bool triangle_inequalities(const ExactReal& x, const ExactReal& y, const ExactReal& z);

/// {p*alpha + q} intersected with (0, bound] for rationals p, q with
/// |numerator| <= height and 1 <= denominator <= max(height, 1).
DistanceSet gen_delta_alpha(const ExactReal& alpha, int height, const ExactReal& bound);

DistanceSet scale(const DistanceSet& s, const ExactReal& r);

}  // namespace urysohn
