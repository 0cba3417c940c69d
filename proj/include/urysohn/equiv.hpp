#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "urysohn/distance_set.hpp"

namespace urysohn {

using ValueMap = std::vector<std::pair<ExactReal, ExactReal>>;

/// Result of comparing two fragments through a bijection. A positive answer
/// means the bijection is consistent with the triangle structure of both
/// fragments; it does not establish equivalence of the full sets.
struct FragmentConsistency {
    bool fragment_consistent = true;
    /// First triple (x, y, z) of the domain whose triangle status flips under f.
    std::optional<std::array<ExactReal, 3>> witness;
};

FragmentConsistency triangle_bijection_check(const DistanceSet& d1, const DistanceSet& d2, const ValueMap& f);

struct ScalingWitness {
    ExactReal ratio;
    DistanceSet domain;
    DistanceSet codomain;

    /// The order-preserving map x -> ratio * x.
    ValueMap induced_map() const;
};

/// The only candidate ratio is min(d2) / min(d1): an order-preserving scaling
/// must send the least element to the least element.
std::optional<ScalingWitness> scaling_witness(const DistanceSet& d1, const DistanceSet& d2);

/// Additivity on sums inside the fragment and a constant ratio f(x)/x.
bool linearity_check(const ValueMap& f, const DistanceSet& d);

/// A rational 2x2 matrix (a b; c d) with nonzero determinant acting by
/// x -> (a x + b) / (c x + d).
class RatMatrix {
public:
    RatMatrix(Rational a, Rational b, Rational c, Rational d);
    static RatMatrix identity() { return RatMatrix(1, 0, 0, 1); }

    const Rational& a() const noexcept { return m_[0]; }
    const Rational& b() const noexcept { return m_[1]; }
    const Rational& c() const noexcept { return m_[2]; }
    const Rational& d() const noexcept { return m_[3]; }
    const std::array<Rational, 4>& entries() const noexcept { return m_; }
    Rational determinant() const { return m_[0] * m_[3] - m_[1] * m_[2]; }

    RatMatrix inverse() const;
    friend RatMatrix operator*(const RatMatrix& lhs, const RatMatrix& rhs);
    friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

private:
    std::array<Rational, 4> m_;
};

ExactReal gl2_apply(const RatMatrix& m, const ExactReal& alpha);

enum class Gl2Status { Equivalent, Inequivalent, Unknown };
const char* to_string(Gl2Status status);

struct Gl2Verdict {
    Gl2Status status = Gl2Status::Unknown;
    std::optional<RatMatrix> matrix;  // present iff Equivalent, verified by gl2_apply
};

/// Orbit relation of quadratic irrationals under GL2(Q). Same squarefree
/// radicand means one field, where an affine map a x + b always works;
/// different radicands are inequivalent. `search_height` is kept for a
/// future non-quadratic mode and is unused here.
Gl2Verdict gl2_equivalent(const ExactReal& alpha, const ExactReal& beta, int search_height = 10);

}  // namespace urysohn
