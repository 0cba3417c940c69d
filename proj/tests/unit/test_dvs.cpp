#include <doctest.h>

#include <array>

#include "support.hpp"

using namespace support;

namespace {

// Naive fixed point: add every missing truncated sum until nothing changes.
std::vector<ExactReal> naive_close(std::vector<ExactReal> values, const std::optional<ExactReal>& cap,
                                   const ExactReal& bound) {
    for (bool changed = true; changed;) {
        changed = false;
        const auto snapshot = values;
        for (const auto& x : snapshot) {
            for (const auto& y : snapshot) {
                ExactReal s = x + y;
                if (cap && s > *cap) s = *cap;
                if (s > bound) continue;
                if (std::find(values.begin(), values.end(), s) == values.end()) {
                    values.push_back(s);
                    changed = true;
                }
            }
        }
    }
    std::sort(values.begin(), values.end());
    return values;
}

// Enumeration oracle for {p alpha + q}: every (unreduced) numerator and
// denominator pair, deduplicated by value.
std::vector<ExactReal> naive_delta_alpha(const ExactReal& alpha, long h, const ExactReal& bound) {
    std::vector<ExactReal> out;
    const long dmax = std::max(h, 1L);
    for (long pn = -h; pn <= h; ++pn)
        for (long pd = 1; pd <= dmax; ++pd)
            for (long qn = -h; qn <= h; ++qn)
                for (long qd = 1; qd <= dmax; ++qd) {
                    const ExactReal v = ExactReal(pn, pd) * alpha + ExactReal(qn, qd);
                    if (v.sign() <= 0 || v > bound) continue;
                    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
                }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("DistanceSet construction") {
    CHECK_THROWS_AS(dset({q(1), q(1)}), Error);
    CHECK_THROWS_AS(dset({q(0)}), Error);
    CHECK_THROWS_AS(dset({q(-1)}), Error);
    CHECK_THROWS_AS(dset({q(3)}, q(2)), Error);
    const auto d = dset({q(2), q(1)}, q(2));
    CHECK(d.values() == std::vector<ExactReal>{q(1), q(2)});
    CHECK(d.closed());
    CHECK(d.contains(q(2)));
    CHECK_FALSE(d.contains(q(3, 2)));
    CHECK(d.index_of(q(2)) == 1u);
}

TEST_CASE("validate_closure examples") {
    CHECK(validate_closure(dset({q(1), q(2)}, q(2))).closed);
    const auto v = validate_closure(dset({q(1), q(3)}, q(3)));
    REQUIRE_FALSE(v.closed);
    CHECK(v.violation->first == q(1));
    CHECK(v.violation->second == q(1));
    // Horizon rule: 1 + 1 = 2 lies beyond sqrt(2) and is not a violation,
    // but (sqrt(2) - 1) doubled is about 0.83, below the horizon and missing.
    const ExactReal a = ExactReal::sqrt(2) - 1;
    const auto w = validate_closure(dset({a, q(1), ExactReal::sqrt(2)}));
    REQUIRE_FALSE(w.closed);
    CHECK(w.violation->first == a);
    CHECK(w.violation->second == a);
    CHECK(a + a < ExactReal::sqrt(2));
    // Without the small element the set is closed up to its horizon.
    CHECK(validate_closure(dset({q(1), ExactReal::sqrt(2)})).closed);
}

TEST_CASE("close examples") {
    CHECK(close(dset({q(1), q(3)}, q(3)), q(3)).values() == std::vector<ExactReal>{q(1), q(2), q(3)});
    CHECK(close(dset({q(1)}, q(1)), q(1)).values() == std::vector<ExactReal>{q(1)});
    const auto c = close(dset({q(1, 2)}), q(2));
    CHECK(c.values() == std::vector<ExactReal>{q(1, 2), q(1), q(3, 2), q(2)});
    CHECK_FALSE(c.bounded());
    CHECK_THROWS_AS(close(dset({q(1)}, q(2)), q(3)), Error);  // bounded: bound must be the cap
    CHECK_THROWS_AS(close(dset({q(3)}), q(2)), Error);         // bound below the max
    try {
        (void)close(dset({q(1, 1000)}), q(1000), 50);
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BudgetExceeded);
    }
}

TEST_CASE("close agrees with the naive fixed point and is idempotent") {
    Gen g(23);
    for (int i = 0; i < 60; ++i) {
        std::vector<ExactReal> values;
        const int n = static_cast<int>(g.range(1, 3));
        for (int k = 0; k < n; ++k) {
            const ExactReal v = g.positive_rational(6);
            if (std::find(values.begin(), values.end(), v) == values.end()) values.push_back(v);
        }
        const auto mx = *std::max_element(values.begin(), values.end());
        const bool bounded = g.coin();
        std::optional<ExactReal> cap;
        ExactReal bound = mx + q(g.range(0, 3));
        if (bounded) cap = bound;
        const auto s = dset(values, cap);
        const auto c = close(s, bound);
        CHECK(c.values() == naive_close(values, cap, bound));
        CHECK(close(c, bound) == c);
        if (bounded) CHECK(validate_closure(c).closed);
    }
}

TEST_CASE("delta_triangle examples") {
    const auto d12 = dset({q(1), q(2)});
    CHECK(delta_triangle(q(1), q(1), q(2), d12));
    CHECK_FALSE(delta_triangle(q(1, 4), q(1, 4), q(1), dset({q(1, 4), q(1)})));
    CHECK(delta_triangle(q(1), q(2), q(3), dset({q(1), q(2), q(3)})));
    CHECK_FALSE(delta_triangle(q(1), q(1), q(3), dset({q(1), q(3)})));
    CHECK_FALSE(delta_triangle(q(1), q(1), q(1, 2), d12));  // 1/2 not in the set
}

TEST_CASE("delta_triangle is symmetric and homogeneous") {
    Gen g(29);
    const auto d = close(dset({q(1, 3), q(1, 2)}), q(3));
    const auto& v = d.values();
    for (int i = 0; i < 400; ++i) {
        std::array<ExactReal, 3> t{v[g.index(v.size())], v[g.index(v.size())], v[g.index(v.size())]};
        const bool base = delta_triangle(t[0], t[1], t[2], d);
        const bool each = t[0] <= t[1] + t[2] && t[1] <= t[0] + t[2] && t[2] <= t[0] + t[1];
        CHECK(base == each);
        std::array<int, 3> perm{0, 1, 2};
        do {
            CHECK(delta_triangle(t[perm[0]], t[perm[1]], t[perm[2]], d) == base);
        } while (std::next_permutation(perm.begin(), perm.end()));
        const ExactReal r = g.coin() ? g.positive_rational(7) : ExactReal::sqrt(3) * g.positive_rational(4);
        CHECK(delta_triangle(r * t[0], r * t[1], r * t[2], scale(d, r)) == base);
    }
}

TEST_CASE("gen_delta_alpha examples") {
    const ExactReal s2 = ExactReal::sqrt(2);
    const auto d = gen_delta_alpha(s2, 1, q(2));
    CHECK(d.values() == std::vector<ExactReal>{s2 - 1, q(1), s2});
    CHECK(d.cap() == q(2));
    CHECK_FALSE(d.closed());
    CHECK(gen_delta_alpha(s2, 0, q(2)).empty());
    // Lexicographic first violation is the smallest element doubled.
    const auto v = validate_closure(d);
    REQUIRE_FALSE(v.closed);
    CHECK(v.violation->first == s2 - 1);
    CHECK(v.violation->second == s2 - 1);
    // (1, 1) is a violation as well: min(2, 2) = 2 is missing.
    CHECK_FALSE(d.contains(min(q(1) + q(1), *d.cap())));
}

TEST_CASE("gen_delta_alpha matches the enumeration oracle") {
    const ExactReal alphas[] = {ExactReal::sqrt(2), ExactReal::sqrt(3), 1 + ExactReal::sqrt(5), ExactReal::sqrt(7) / 3};
    for (const auto& alpha : alphas) {
        for (long h = 0; h <= 3; ++h) {
            const ExactReal bound = q(5);
            CHECK(gen_delta_alpha(alpha, static_cast<int>(h), bound).values() == naive_delta_alpha(alpha, h, bound));
        }
    }
    CHECK(gen_delta_alpha(ExactReal::sqrt(2), 3, q(5)).size() == naive_delta_alpha(ExactReal::sqrt(2), 3, q(5)).size());
}

TEST_CASE("scale examples") {
    CHECK(scale(dset({q(1), q(2)}), q(3)).values() == std::vector<ExactReal>{q(3), q(6)});
    const auto d = dset({q(1), q(2)}, q(2));
    CHECK(scale(d, q(1)) == d);
    const ExactReal s2 = ExactReal::sqrt(2);
    const auto s = scale(dset({s2 - 1, q(1), s2}), s2);
    CHECK(s.values() == std::vector<ExactReal>{2 - s2, s2, q(2)});
    const auto closed = scale(d, q(5));
    CHECK(closed.closed());
    CHECK(closed.cap() == q(10));
    CHECK_THROWS_AS(scale(d, q(-1)), Error);
}
