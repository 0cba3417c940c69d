#pragma once

// Hand-rolled generators and small builders shared by the unit tests and the
// acceptance runner. Every generator is driven by an explicit seed.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "urysohn/coding.hpp"
#include "urysohn/equiv.hpp"
#include "urysohn/limit_builder.hpp"
#include "urysohn/ramsey.hpp"

namespace support {

using namespace urysohn;

inline ExactReal q(long n, long d = 1) { return ExactReal(n, d); }
inline ExactReal surd(long a, long b, std::int64_t d) { return ExactReal::surd(Rational(a), Rational(b), d); }

inline DistanceSet dset(std::vector<ExactReal> values, std::optional<ExactReal> cap = std::nullopt) {
    return DistanceSet(std::move(values), std::move(cap));
}

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    bool coin() { return range(0, 1) == 1; }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(range(0, static_cast<long>(n) - 1)); }

    /// n/d with |n| <= h, 1 <= d <= h.
    ExactReal rational(long h) { return ExactReal(range(-h, h), range(1, h)); }
    ExactReal positive_rational(long h) { return ExactReal(range(1, h), range(1, h)); }

    /// a + b sqrt(D) with b != 0.
    ExactReal surd(std::int64_t radicand, long h) {
        Rational a(range(-h, h), range(1, h));
        long bn = 0;
        while (bn == 0) bn = range(-h, h);
        Rational b(bn, range(1, h));
        a.canonicalize();
        b.canonicalize();
        return ExactReal::surd(a, b, radicand);
    }

    /// Positive irrational in Q(sqrt(radicand)).
    ExactReal positive_surd(std::int64_t radicand, long h) {
        for (;;) {
            ExactReal x = surd(radicand, h);
            if (x.sign() > 0) return x;
        }
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        std::shuffle(v.begin(), v.end(), rng_);
    }

    /// Adds up to `k` points to `x`, each drawn from the admissible one-point
    /// extensions over all of `x`; an ordered `x` gets each new point at a
    /// random position.
    Space grow(Space x, std::size_t k, const DistanceSet& d) {
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<std::size_t> all(x.size());
            std::iota(all.begin(), all.end(), 0);
            const auto exts = enumerate_extensions(x, all, d);
            if (exts.empty()) break;
            const auto& ext = exts[index(exts.size())];
            const bool ordered = x.ordered();
            std::vector<std::size_t> order(x.order().begin(), x.order().end());
            std::string label = "p" + std::to_string(x.size());
            while (x.find(label)) label += "'";
            const std::size_t fresh = x.add_point(label, ext.distances);
            if (ordered) {
                order.insert(order.begin() + static_cast<std::ptrdiff_t>(index(order.size() + 1)), fresh);
                x.set_order(order);
            }
        }
        return x;
    }

    /// Random space over `d` with up to `n` points and a random order (or none).
    Space space(std::size_t n, const DistanceSet& d, bool ordered = true) {
        Space x = grow(Space({}, {}, std::vector<std::size_t>{}), n, d);
        if (ordered) {
            std::vector<std::size_t> order(x.size());
            std::iota(order.begin(), order.end(), 0);
            shuffle(order);
            x.set_order(order);
        } else {
            x.set_order(std::nullopt);
        }
        return x;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// n points, all at distance `v`, order by index (or none).
inline Space uniform_space(std::size_t n, const ExactReal& v = ExactReal(1), bool ordered = true) {
    return make_space(n, [&](std::size_t, std::size_t) { return v; }, ordered);
}

/// Code of the library error thrown by `f`, or nullopt when nothing is thrown.
template <typename F>
std::optional<ErrorCode> error_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

}  // namespace support
