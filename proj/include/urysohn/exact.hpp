#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "urysohn/error.hpp"

namespace urysohn {

using Rational = mpq_class;
using Integer = mpz_class;

/// An element of Q or of a real quadratic field Q(sqrt(D)).
///
/// The value is `a + b*sqrt(D)` with D squarefree and at least 2. A value
/// whose surd coefficient is zero is always stored as a rational (radicand 0),
/// so two equal numbers have one representation.
///
/// Ordering and arithmetic between two irrational values with different
/// radicands throws `Error(MixedRadicands)`. Equality never throws: numbers
/// from different quadratic fields are equal only when both are rational.
class ExactReal {
public:
    ExactReal() = default;
    ExactReal(long value) : a_(value) {}  // NOLINT: implicit by design of literals
    explicit ExactReal(Rational value);
    ExactReal(long num, long den);

    /// Builds `a + b*sqrt(d)`, pulling square factors out of `d`.
    static ExactReal surd(Rational a, Rational b, std::int64_t d);
    static ExactReal sqrt(std::int64_t d) { return surd(0, 1, d); }

    bool is_rational() const noexcept { return radicand_ == 0; }
    const Rational& rational_part() const noexcept { return a_; }
    const Rational& surd_coeff() const noexcept { return b_; }
    /// 0 for rationals.
    std::int64_t radicand() const noexcept { return radicand_; }

    int sign() const;
    bool is_zero() const noexcept { return sgn(a_) == 0 && radicand_ == 0; }

    ExactReal conjugate() const;
    /// Field norm a^2 - b^2 D; nonzero for every nonzero value.
    Rational norm() const;
    Integer floor() const;
    double to_double() const;

    /// Canonical text: "p/q" or "p/q+r/s*sqrt(D)" (rational term dropped when zero).
    std::string to_string() const;
    static ExactReal parse(std::string_view text);

    ExactReal operator-() const;
    ExactReal& operator+=(const ExactReal& rhs);
    ExactReal& operator-=(const ExactReal& rhs);
    ExactReal& operator*=(const ExactReal& rhs);
    ExactReal& operator/=(const ExactReal& rhs);

    friend ExactReal operator+(ExactReal lhs, const ExactReal& rhs) { return lhs += rhs; }
    friend ExactReal operator-(ExactReal lhs, const ExactReal& rhs) { return lhs -= rhs; }
    friend ExactReal operator*(ExactReal lhs, const ExactReal& rhs) { return lhs *= rhs; }
    friend ExactReal operator/(ExactReal lhs, const ExactReal& rhs) { return lhs /= rhs; }

    friend bool operator==(const ExactReal& lhs, const ExactReal& rhs);
    friend std::strong_ordering operator<=>(const ExactReal& lhs, const ExactReal& rhs);

private:
    std::int64_t common_radicand(const ExactReal& other) const;
    void normalize();

    Rational a_{0};
    Rational b_{0};
    std::int64_t radicand_ = 0;
};

enum class Ordering { Less, Equal, Greater };

Ordering compare(const ExactReal& lhs, const ExactReal& rhs);
const char* to_string(Ordering ord);

ExactReal abs(const ExactReal& x);
const ExactReal& min(const ExactReal& x, const ExactReal& y);
const ExactReal& max(const ExactReal& x, const ExactReal& y);

/// Removes square factors: returns (k, s) with d = k^2 * s and s squarefree.
std::pair<std::int64_t, std::int64_t> squarefree_split(std::int64_t d);

/// The simplest rational strictly between two distinct reals (Stern-Brocot descent).
Rational rational_between(const ExactReal& lo, const ExactReal& hi);

std::ostream& operator<<(std::ostream& os, const ExactReal& x);

}  // namespace urysohn
