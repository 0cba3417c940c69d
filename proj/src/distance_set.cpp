#include "urysohn/distance_set.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace urysohn {

DistanceSet::DistanceSet(std::vector<ExactReal> values, std::optional<ExactReal> cap)
    : values_(std::move(values)), cap_(std::move(cap)) {
    std::sort(values_.begin(), values_.end());
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i].sign() <= 0)
            throw Error(ErrorCode::InvalidArgument, "distance values must be positive: " + values_[i].to_string());
        if (i > 0 && values_[i] == values_[i - 1])
            throw Error(ErrorCode::InvalidArgument, "duplicate distance value " + values_[i].to_string());
    }
    if (cap_) {
        if (cap_->sign() <= 0) throw Error(ErrorCode::InvalidArgument, "cap must be positive");
        if (!values_.empty() && values_.back() > *cap_)
            throw Error(ErrorCode::InvalidArgument, "value " + values_.back().to_string() + " exceeds cap");
    }
    closed_ = validate_closure(*this).closed;
}

std::optional<std::size_t> DistanceSet::index_of(const ExactReal& x) const {
    auto it = std::lower_bound(values_.begin(), values_.end(), x);
    if (it == values_.end() || !(*it == x)) return std::nullopt;
    return static_cast<std::size_t>(it - values_.begin());
}

bool DistanceSet::contains(const ExactReal& x) const { return index_of(x).has_value(); }

ClosureCheck validate_closure(const DistanceSet& s) {
    const auto& v = s.values();
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = i; j < v.size(); ++j) {
            ExactReal sum = v[i] + v[j];
            if (s.bounded()) {
                sum = min(sum, *s.cap());
            } else if (sum > v.back()) {
                continue;  // beyond the fragment horizon
            }
            if (!s.contains(sum)) return ClosureCheck{false, std::make_pair(v[i], v[j])};
        }
    }
    return ClosureCheck{};
}

DistanceSet close(const DistanceSet& s, const ExactReal& bound, std::size_t max_size) {
    if (!s.empty() && bound < s.max())
        throw Error(ErrorCode::InvalidArgument, "closure bound below the largest value");
    if (s.bounded() && !(bound == *s.cap()))
        throw Error(ErrorCode::InvalidArgument, "closure bound of a bounded set must equal its cap");

    std::set<ExactReal> members(s.values().begin(), s.values().end());
    std::vector<ExactReal> frontier(s.values().begin(), s.values().end());
    while (!frontier.empty()) {
        std::vector<ExactReal> fresh;
        for (const auto& x : frontier) {
            // Snapshot: sums with elements added in this round are handled next round.
            const std::vector<ExactReal> current(members.begin(), members.end());
            for (const auto& y : current) {
                ExactReal sum = x + y;
                if (s.bounded()) sum = min(sum, *s.cap());
                if (sum > bound) continue;
                if (members.insert(sum).second) {
                    fresh.push_back(sum);
                    if (members.size() > max_size)
                        throw Error(ErrorCode::BudgetExceeded,
                                    "closure exceeds " + std::to_string(max_size) + " values");
                }
            }
        }
        frontier = std::move(fresh);
    }
    return DistanceSet(std::vector<ExactReal>(members.begin(), members.end()), s.cap());
}

bool triangle_inequalities(const ExactReal& x, const ExactReal& y, const ExactReal& z) {
    return abs(x - y) <= z && z <= x + y;
}

bool delta_triangle(const ExactReal& x, const ExactReal& y, const ExactReal& z, const DistanceSet& s) {
    return s.contains(x) && s.contains(y) && s.contains(z) && triangle_inequalities(x, y, z);
}

DistanceSet gen_delta_alpha(const ExactReal& alpha, int height, const ExactReal& bound) {
    if (alpha.is_rational() || alpha.sign() <= 0)
        throw Error(ErrorCode::InvalidArgument, "alpha must be a positive irrational surd");
    if (height < 0) throw Error(ErrorCode::InvalidArgument, "height must be non-negative");
    if (bound.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "bound must be positive");

    // Reduced rationals ordered by (denominator, numerator).
    std::vector<Rational> coefficients;
    for (long den = 1; den <= std::max(height, 1); ++den) {
        for (long num = -height; num <= height; ++num) {
            if (num == 0 ? den != 1 : std::gcd(num, den) != 1) continue;
            coefficients.emplace_back(num, den);
        }
    }

    std::set<ExactReal> seen;
    std::vector<ExactReal> values;
    for (const auto& p : coefficients) {
        const ExactReal scaled = alpha * ExactReal(p);
        for (const auto& q : coefficients) {
            ExactReal v = scaled + ExactReal(q);
            if (v.sign() <= 0 || v > bound) continue;
            // p*alpha + q determines (p, q) when alpha is irrational.
            if (!seen.insert(v).second)
                throw std::logic_error("duplicate representation of " + v.to_string());
            values.push_back(std::move(v));
        }
    }
    return DistanceSet(std::move(values), bound);
}

DistanceSet scale(const DistanceSet& s, const ExactReal& r) {
    if (r.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "scale factor must be positive");
    std::vector<ExactReal> values;
    values.reserve(s.size());
    for (const auto& v : s.values()) values.push_back(v * r);
    std::optional<ExactReal> cap;
    if (s.cap()) cap = *s.cap() * r;
    return DistanceSet(std::move(values), std::move(cap));
}

}  // namespace urysohn
