#include <doctest.h>

#include "support.hpp"

using namespace support;

namespace {

Space labelled(std::vector<std::string> labels, std::vector<std::vector<ExactReal>> dist, bool ordered = true) {
    std::optional<std::vector<std::size_t>> order;
    if (ordered) {
        order.emplace(labels.size());
        std::iota(order->begin(), order->end(), 0);
    }
    return Space(std::move(labels), std::move(dist), std::move(order));
}

using Overlap = std::vector<std::pair<std::size_t, std::size_t>>;

}  // namespace

TEST_CASE("free_amalgam examples") {
    const Space b = labelled({"a", "b"}, {{q(0), q(1)}, {q(1), q(0)}});
    const Space c = labelled({"a", "c"}, {{q(0), q(2)}, {q(2), q(0)}});
    const Overlap single{{0, 0}};
    const auto m = free_amalgam(b, c, single);
    REQUIRE(m.space.size() == 3u);
    CHECK(m.c_embedding == std::vector<std::size_t>{0, 2});
    CHECK(m.space.d(1, 2) == q(3));
    CHECK_FALSE(validate(m.space));

    const Space b2 = labelled({"x", "y"}, {{q(0), q(1)}, {q(1), q(0)}});
    const Space c2 = labelled({"u", "v"}, {{q(0), q(2)}, {q(2), q(0)}});
    const auto e = free_amalgam(b2, c2, Overlap{});
    REQUIRE(e.space.size() == 4u);
    for (std::size_t i : {0u, 1u})
        for (std::size_t j : {2u, 3u}) CHECK(e.space.d(i, j) == q(3));

    // Two overlap points; brute min over z gives min(1 + 3, 1 + 1) = 2.
    const Space b3 = labelled({"a1", "a2", "b"}, {{q(0), q(2), q(1)}, {q(2), q(0), q(1)}, {q(1), q(1), q(0)}});
    const Space c3 = labelled({"a1", "a2", "c"}, {{q(0), q(2), q(3)}, {q(2), q(0), q(1)}, {q(3), q(1), q(0)}});
    const auto t = free_amalgam(b3, c3, Overlap{{0, 0}, {1, 1}});
    const ExactReal brute = std::min(b3.d(2, 0) + c3.d(0, 2), b3.d(2, 1) + c3.d(1, 2));
    CHECK(brute == q(2));
    CHECK(t.space.d(2, t.c_embedding[2]) == brute);
    CHECK_FALSE(validate(t.space));
}

TEST_CASE("free_amalgam errors") {
    const Space one = uniform_space(1);
    CHECK(error_of([&] { (void)free_amalgam(one, one, Overlap{}); }) == ErrorCode::DegenerateAmalgam);
    const Space b = uniform_space(2, q(1));
    const Space c = uniform_space(2, q(2));
    CHECK(error_of([&] { (void)free_amalgam(b, c, Overlap{{0, 0}, {1, 1}}); }) == ErrorCode::OverlapNotIsometric);
    CHECK(error_of([&] { (void)free_amalgam(b, b, Overlap{{0, 0}, {0, 1}}); }) == ErrorCode::OverlapNotIsometric);
    CHECK(error_of([&] { (void)free_amalgam(b, b, Overlap{{0, 1}, {1, 0}}); }) == ErrorCode::OverlapNotIsometric);
    CHECK(error_of([&] { (void)free_amalgam(b, b, Overlap{{0, 7}}); }) == ErrorCode::OverlapNotIsometric);
}

TEST_CASE("free_amalgam embeds both sides on random instances") {
    Gen g(79);
    const auto d = close(dset({q(1), q(3, 2)}), q(2));
    int checked = 0;
    for (int i = 0; i < 500; ++i) {
        const bool ordered = g.coin();
        const Space b = g.space(static_cast<std::size_t>(g.range(1, 6)), d, ordered);
        std::vector<std::size_t> shared;
        for (std::size_t k = 0; k < b.size(); ++k)
            if (g.range(0, 2) == 0) shared.push_back(k);
        if (ordered) std::sort(shared.begin(), shared.end(), [&](auto x, auto y) { return b.less(x, y); });
        Space base = induced(b, shared);
        if (ordered) {
            std::vector<std::size_t> order(base.size());
            std::iota(order.begin(), order.end(), 0);
            base.set_order(order);
        } else {
            base.set_order(std::nullopt);
        }
        const std::size_t extra = static_cast<std::size_t>(g.range(shared.empty() ? 1 : 0, 6 - static_cast<long>(shared.size())));
        const Space c = g.grow(base, extra, d);
        Overlap overlap;
        for (std::size_t k = 0; k < shared.size(); ++k) overlap.emplace_back(shared[k], k);
        if (shared.empty() && b.size() == 1 && c.size() == 1) continue;

        const auto m = free_amalgam(b, c, overlap);
        const Space& x = m.space;
        CHECK_FALSE(validate(x));
        REQUIRE(x.size() == b.size() + c.size() - shared.size());
        for (std::size_t p = 0; p < b.size(); ++p)
            for (std::size_t r = 0; r < b.size(); ++r) {
                CHECK(x.d(p, r) == b.d(p, r));
                if (ordered && p != r) CHECK(x.less(p, r) == b.less(p, r));
            }
        for (std::size_t p = 0; p < c.size(); ++p)
            for (std::size_t r = 0; r < c.size(); ++r) {
                CHECK(x.d(m.c_embedding[p], m.c_embedding[r]) == c.d(p, r));
                if (ordered && p != r) CHECK(x.less(m.c_embedding[p], m.c_embedding[r]) == c.less(p, r));
            }
        for (const auto& [pb, pc] : overlap) CHECK(m.c_embedding[pc] == pb);
        // Cross distances: bounded by every route through the overlap, tight for one.
        for (std::size_t p = 0; p < b.size(); ++p) {
            for (std::size_t r = shared.size(); r < c.size(); ++r) {
                const ExactReal& cross = x.d(p, m.c_embedding[r]);
                if (shared.empty()) {
                    CHECK(cross == b.diameter() + c.diameter());
                    continue;
                }
                bool tight = false;
                for (const auto& [zb, zc] : overlap) {
                    const ExactReal route = b.d(p, zb) + c.d(zc, r);
                    CHECK(cross <= route);
                    if (cross == route) tight = true;
                }
                CHECK(tight);
            }
        }
        ++checked;
    }
    CHECK(checked > 450);
}

TEST_CASE("cap_distances examples") {
    const Space x = uniform_space(3, q(1));
    CHECK(cap_distances(x, q(2)) == x);
    const Space b = labelled({"a", "b"}, {{q(0), q(1)}, {q(1), q(0)}});
    const Space c = labelled({"a", "c"}, {{q(0), q(2)}, {q(2), q(0)}});
    const auto m = free_amalgam(b, c, Overlap{{0, 0}});
    const Space capped = cap_distances(m.space, q(2));
    CHECK(capped.d(1, 2) == q(2));
    CHECK_FALSE(validate(capped));
    CHECK(cap_distances(m.space, m.space.diameter()) == m.space);
    CHECK(error_of([&] { (void)cap_distances(x, q(0)); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("cap_distances keeps the metric and is idempotent") {
    Gen g(83);
    const auto d = close(dset({q(1), q(3, 2)}), q(3));
    for (int i = 0; i < 1000; ++i) {
        const Space x = g.space(static_cast<std::size_t>(g.range(1, 5)), d, g.coin());
        const ExactReal cap = g.positive_rational(8);
        const Space once = cap_distances(x, cap);
        CHECK_FALSE(validate(once));
        CHECK(cap_distances(once, cap) == once);
        for (std::size_t p = 0; p < x.size(); ++p)
            for (std::size_t r = 0; r < x.size(); ++r) CHECK(once.d(p, r) == std::min(x.d(p, r), cap));
    }
}

TEST_CASE("extend_order examples") {
    const std::vector<std::string> labels{"a", "b", "z"};
    const std::vector<std::size_t> base{0, 1};
    CHECK(extend_order(3, base, {}, labels) == std::vector<std::size_t>{0, 1, 2});
    const std::vector<OrderConstraint> first{{2, Relation::Before, 0}, {2, Relation::Before, 1}};
    CHECK(extend_order(3, base, first, labels) == std::vector<std::size_t>{2, 0, 1});
    // Two new points x, y between a_n and b_n, with x before y.
    const std::vector<std::string> l5{"a0", "a1", "b1", "y", "x"};
    const std::vector<std::size_t> b5{0, 1, 2};
    const std::vector<OrderConstraint> between{{3, Relation::After, 1}, {3, Relation::Before, 2},
                                               {4, Relation::After, 1}, {4, Relation::Before, 2},
                                               {4, Relation::Before, 3}};
    const auto order = extend_order(5, b5, between, l5);
    REQUIRE(order.size() == 5u);
    std::vector<std::size_t> rank(5);
    for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
    for (const auto& c : between)
        CHECK((c.relation == Relation::Before ? rank[c.point] < rank[c.other] : rank[c.point] > rank[c.other]));
    CHECK(rank[0] < rank[1]);
    CHECK(rank[1] < rank[2]);
    CHECK(order == std::vector<std::size_t>{0, 1, 4, 3, 2});
}

TEST_CASE("extend_order tie-break and cycles") {
    // Unconstrained new points come after the base, by label.
    const std::vector<std::string> labels{"m", "c", "a", "b"};
    CHECK(extend_order(4, std::vector<std::size_t>{0}, {}, labels) == std::vector<std::size_t>{0, 2, 3, 1});
    const std::vector<OrderConstraint> cyc{{1, Relation::Before, 2}, {2, Relation::Before, 1}};
    CHECK(error_of([&] { (void)extend_order(4, std::vector<std::size_t>{0}, cyc, labels); }) ==
          ErrorCode::CyclicConstraints);
    // Contradicting the base order is a cycle too.
    const std::vector<OrderConstraint> against{{1, Relation::Before, 0}};
    CHECK(error_of([&] { (void)extend_order(2, std::vector<std::size_t>{0, 1}, against, std::vector<std::string>{"m", "c"}); }) ==
          ErrorCode::CyclicConstraints);
}

TEST_CASE("extend_order satisfies random constraint sets") {
    Gen g(89);
    for (int i = 0; i < 300; ++i) {
        const std::size_t old_n = static_cast<std::size_t>(g.range(0, 4));
        const std::size_t n = old_n + static_cast<std::size_t>(g.range(1, 4));
        std::vector<std::string> labels;
        for (std::size_t k = 0; k < n; ++k) labels.push_back("q" + std::to_string(g.range(0, 99)) + "_" + std::to_string(k));
        std::vector<std::size_t> base(old_n);
        std::iota(base.begin(), base.end(), 0);
        // A hidden target order guarantees consistency.
        std::vector<std::size_t> hidden(n);
        std::iota(hidden.begin(), hidden.end(), 0);
        g.shuffle(hidden);
        std::vector<std::size_t> hrank(n);
        for (std::size_t r = 0; r < n; ++r) hrank[hidden[r]] = r;
        std::sort(base.begin(), base.end(), [&](auto a, auto b) { return hrank[a] < hrank[b]; });
        std::vector<OrderConstraint> cs;
        for (int k = 0; k < 6; ++k) {
            const std::size_t a = old_n + g.index(n - old_n), b = g.index(n);
            if (a == b) continue;
            cs.push_back({a, hrank[a] < hrank[b] ? Relation::Before : Relation::After, b});
        }
        const auto order = extend_order(n, base, cs, labels);
        std::vector<std::size_t> rank(n);
        for (std::size_t r = 0; r < n; ++r) rank[order[r]] = r;
        for (std::size_t k = 1; k < base.size(); ++k) CHECK(rank[base[k - 1]] < rank[base[k]]);
        for (const auto& c : cs)
            CHECK((c.relation == Relation::Before ? rank[c.point] < rank[c.other] : rank[c.point] > rank[c.other]));
        CHECK(extend_order(n, base, cs, labels) == order);
    }
}
