#include <doctest.h>

#include "support.hpp"

using namespace support;

namespace {

// Independent count: every tuple in D^n that passes a direct triangle scan,
// times the order slots.
std::size_t brute_extension_count(const Space& x, const DistanceSet& d) {
    const std::size_t n = x.size();
    const auto& v = d.values();
    std::size_t profiles = 0;
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = 0; j < n && ok; ++j) {
                const ExactReal& a = v[idx[i]];
                const ExactReal& b = v[idx[j]];
                const ExactReal& c = x.d(i, j);
                if (a > b + c || b > a + c || c > a + b) ok = false;
            }
        if (ok) ++profiles;
        std::size_t k = 0;
        while (k < n && ++idx[k] == v.size()) idx[k++] = 0;
        if (k == n) break;
    }
    return profiles * (x.ordered() ? n + 1 : 1);
}

Space bound_to(Space x, const DistanceSet& d) {
    x.bind(d);
    return x;
}

// Two isometric copies of a random space, the second in a random order, so
// that i -> n + i is a partial isometry that need not preserve the order.
std::pair<Space, PartialIsometry> twin(Gen& g, std::size_t n, const DistanceSet& d) {
    const Space a = g.space(n, d);
    Space b = a;
    std::vector<std::size_t> order(b.size());
    std::iota(order.begin(), order.end(), 0);
    g.shuffle(order);
    b.set_order(order);
    const auto m = free_amalgam(a, b, std::vector<std::pair<std::size_t, std::size_t>>{});
    Space s = cap_distances(m.space, *d.cap());
    s.bind(d);
    PartialIsometry p;
    for (std::size_t i = 0; i < a.size(); ++i) p.pairs.emplace_back(i, m.c_embedding[i]);
    return {s, p};
}

}  // namespace

TEST_CASE("one_point_extensions examples") {
    const auto d12 = dset({q(1), q(2)}, q(2));
    const Space empty({}, {});
    const auto e0 = one_point_extensions(empty, d12);
    REQUIRE(e0.size() == 1u);
    CHECK(e0[0].size() == 1u);
    CHECK(e0[0].ordered());

    const auto e1 = one_point_extensions(bound_to(uniform_space(1), d12), d12);
    CHECK(e1.size() == 4u);
    CHECK(e1.size() == brute_extension_count(uniform_space(1), d12));

    const auto d1 = dset({q(1)});
    const Space pair = uniform_space(2, q(2));
    const auto e2 = one_point_extensions(pair, d1);
    CHECK(e2.size() == 3u);
    for (const auto& s : e2) {
        CHECK(s.d(2, 0) == q(1));
        CHECK(s.d(2, 1) == q(1));
    }
    // Duplicate free.
    for (std::size_t i = 0; i < e1.size(); ++i)
        for (std::size_t j = i + 1; j < e1.size(); ++j) CHECK_FALSE(e1[i] == e1[j]);
    CHECK(error_of([&] { (void)one_point_extensions(pair, dset({q(1), q(2), q(3)}), 5); }) ==
          ErrorCode::BudgetExceeded);
}

TEST_CASE("one_point_extensions counts match the enumeration oracle") {
    Gen g(97);
    const auto d = close(dset({q(1), q(3, 2)}), q(3));
    for (int i = 0; i < 40; ++i) {
        const Space x = g.space(static_cast<std::size_t>(g.range(0, 4)), d, g.coin());
        const auto exts = one_point_extensions(x, d);
        CHECK(exts.size() == brute_extension_count(x, d));
        for (const auto& e : exts) {
            CHECK_FALSE(validate(e));
            CHECK(e.size() == x.size() + 1);
        }
    }
}

TEST_CASE("extension_property_check examples") {
    const auto d1 = dset({q(1)});
    const auto r = extension_property_check(uniform_space(1), d1, 1);
    CHECK(r.unrealized.size() == 2u);  // one per order slot
    CHECK_FALSE(r.holds());
    CHECK(extension_property_check(uniform_space(1), d1, 0).holds());
    CHECK(extension_property_check(uniform_space(3), d1, 0).holds());
    const auto tiny = Budget{64, 1};
    CHECK(error_of([&] { (void)extension_property_check(uniform_space(3), d1, 1, {}, tiny); }) ==
          ErrorCode::BudgetExceeded);
}

TEST_CASE("saturate examples") {
    const auto d12 = dset({q(1), q(2)}, q(2));
    const Space m = bound_to(uniform_space(1), d12);
    const auto s = saturate(m, d12, 1);
    CHECK(s.report.holds());
    CHECK(s.space.size() == 5u);
    const std::vector<std::size_t> original{0};
    CHECK(extension_property_check(s.space, d12, 1, original).holds());
    CHECK_FALSE(validate(s.space));
    // The first point keeps its place and distances.
    for (std::size_t i = 1; i < s.space.size(); ++i) {
        CHECK(s.space.d(0, i) >= q(1));
        CHECK(s.space.d(0, i) <= q(2));
    }
    // Rerun over the original points adds nothing.
    const auto again = saturate(s.space, d12, 1, {}, original);
    CHECK(again.space == s.space);

    const Space empty({}, {});
    const auto s0 = saturate(empty, d12, 0);
    CHECK(s0.space.size() == 1u);
    CHECK(saturate(m, d12, 0).space == m);

    CHECK(error_of([&] { (void)saturate(m, dset({q(1), q(3)}, q(3)), 1); }) == ErrorCode::InvalidArgument);
    const auto capped = saturate(m, d12, 1, Budget{3, 1'000'000});
    CHECK(capped.report.budget_exceeded);
    CHECK_FALSE(capped.report.unrealized.empty());
    CHECK(capped.space.size() == 3u);
}

TEST_CASE("saturation establishes the extension property over the original points") {
    Gen g(101);
    const auto d = close(dset({q(1), q(3, 2)}, q(2)), q(2));
    for (int i = 0; i < 15; ++i) {
        const Space m = bound_to(g.space(static_cast<std::size_t>(g.range(1, 3)), d, g.coin()), d);
        const std::size_t k = static_cast<std::size_t>(g.range(0, 2));
        const auto s = saturate(m, d, k);
        REQUIRE(s.report.holds());
        CHECK_FALSE(validate(s.space));
        std::vector<std::size_t> original(m.size());
        std::iota(original.begin(), original.end(), 0);
        CHECK(extension_property_check(s.space, d, k, original).holds());
        for (std::size_t a = 0; a < m.size(); ++a)
            for (std::size_t b = 0; b < m.size(); ++b) {
                CHECK(s.space.d(a, b) == m.d(a, b));
                if (m.ordered() && a != b) CHECK(s.space.less(a, b) == m.less(a, b));
            }
        CHECK(saturate(s.space, d, k, {}, original).space == s.space);
    }
}

TEST_CASE("extend_partial_isometry examples") {
    const auto d12 = dset({q(1), q(2)}, q(2));
    const Space m = bound_to(uniform_space(3, q(1)), d12);
    const PartialIsometry id{{{0, 0}, {1, 1}}};
    const auto same = extend_partial_isometry(m, id, 2, d12);
    CHECK_FALSE(same.added_point);
    CHECK(same.map.image(2) == 2u);

    const Space ab = bound_to(uniform_space(2, q(1)), d12);
    const PartialIsometry shift{{{0, 1}}};
    const auto grown = extend_partial_isometry(ab, shift, 1, d12);
    CHECK(grown.added_point);
    REQUIRE(grown.space.size() == 3u);
    const std::size_t c = *grown.map.image(1);
    CHECK(c == 2u);
    CHECK(grown.space.d(1, c) == q(1));
    CHECK(grown.space.less(1, c));
    CHECK(inspect(grown.map, grown.space).ok());

    const auto back = extend_partial_isometry_back(ab, shift, 0, d12);
    CHECK(back.added_point);
    REQUIRE(back.map.preimage(0));
    const std::size_t w = *back.map.preimage(0);
    CHECK(back.space.less(w, 0));
    CHECK(inspect(back.map, back.space).ok());

    CHECK(error_of([&] { (void)extend_partial_isometry(ab, shift, 0, d12); }) == ErrorCode::InvalidArgument);
    const PartialIsometry flip{{{0, 1}, {1, 0}}};
    const Space abc = bound_to(uniform_space(3, q(1)), d12);
    CHECK(error_of([&] { (void)extend_partial_isometry(abc, flip, 2, d12); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("extend_partial_isometry on random instances") {
    Gen g(103);
    const auto d = close(dset({q(1), q(3, 2)}, q(2)), q(2));
    for (int i = 0; i < 100; ++i) {
        const Space m = bound_to(g.space(static_cast<std::size_t>(g.range(2, 5)), d), d);
        // Order-preserving partial isometry: an induced copy under rank matching.
        std::vector<std::size_t> dom;
        for (std::size_t k = 0; k < m.size(); ++k)
            if (g.coin()) dom.push_back(k);
        PartialIsometry p;
        if (!dom.empty()) {
            const auto copies = copies_of(m, induced(m, in_order(m, dom)));
            const auto& target = copies[g.index(copies.size())];
            const auto src = in_order(m, dom);
            const auto dst = in_order(m, target);
            for (std::size_t k = 0; k < src.size(); ++k) p.pairs.emplace_back(src[k], dst[k]);
        }
        REQUIRE(inspect(p, m).ok());
        const bool forth = g.coin();
        std::vector<std::size_t> candidates;
        for (std::size_t k = 0; k < m.size(); ++k)
            if (forth ? !p.image(k) : !p.preimage(k)) candidates.push_back(k);
        if (candidates.empty()) continue;
        const std::size_t x = candidates[g.index(candidates.size())];
        const auto e = forth ? extend_partial_isometry(m, p, x, d) : extend_partial_isometry_back(m, p, x, d);
        CHECK(inspect(e.map, e.space).ok());
        CHECK_FALSE(validate(e.space));
        CHECK(forth ? e.map.image(x).has_value() : e.map.preimage(x).has_value());
        for (const auto& [a, b] : p.pairs) CHECK(e.map.image(a) == b);
        CHECK(e.map.pairs.size() == p.pairs.size() + 1);
        for (std::size_t a = 0; a < m.size(); ++a)
            for (std::size_t b = 0; b < m.size(); ++b) {
                CHECK(e.space.d(a, b) == m.d(a, b));
                if (a != b) CHECK(e.space.less(a, b) == m.less(a, b));
            }
    }
}

TEST_CASE("density_perturb examples") {
    const auto d = close(dset({q(1, 4)}, q(4)), q(4));
    const Space m = bound_to(uniform_space(2, q(1)), d);
    const PartialIsometry p{{{0, 1}}};
    const auto r = density_perturb(m, p, q(1, 2), d);
    CHECK(r.delta == q(1, 4));
    REQUIRE(r.images.size() == 1u);
    CHECK(r.space.d(1, r.images[0]) == q(1, 4));
    CHECK(r.witness.size() == 2u);
    CHECK_FALSE(validate(r.space));
    // eps at or below the least value.
    CHECK(error_of([&] { (void)density_perturb(m, p, q(1, 4), d); }) == ErrorCode::NoSmallEnoughDelta);
    // Sum leaves an unbounded fragment.
    const auto open = dset({q(1, 4), q(1)});
    const Space mo = bound_to(uniform_space(2, q(1)), open);
    const PartialIsometry po{{{0, 0}, {1, 1}}};
    CHECK(error_of([&] { (void)density_perturb(mo, po, q(1, 2), open); }) == ErrorCode::ZNotInDelta);
}

TEST_CASE("density_perturb guarantees on random twins") {
    Gen g(107);
    const auto d = close(dset({q(1, 4)}, q(4)), q(4));
    for (int i = 0; i < 30; ++i) {
        auto [m, p] = twin(g, static_cast<std::size_t>(g.range(2, 3)), dset({q(1), q(3, 2), q(2)}, q(2)));
        // Rebind to the finer fragment; every distance is still a multiple of 1/4.
        m.bind(d);
        REQUIRE_FALSE(validate(m));
        const ExactReal eps = d.values()[1 + g.index(d.size() - 1)];
        const auto r = density_perturb(m, p, eps, d);
        CHECK(r.delta < eps);
        CHECK(d.contains(r.delta));
        CHECK_FALSE(validate(r.space));
        REQUIRE(r.images.size() == p.pairs.size());
        for (std::size_t a = 0; a < p.pairs.size(); ++a) {
            const auto [xa, ya] = p.pairs[a];
            CHECK(r.space.d(ya, r.images[a]) == r.delta);
            for (std::size_t b = 0; b < p.pairs.size(); ++b) {
                const auto xb = p.pairs[b].first;
                CHECK(r.space.d(r.images[a], r.images[b]) == m.d(xa, xb));
                if (a != b) CHECK(r.space.less(r.images[a], r.images[b]) == m.less(xa, xb));
            }
        }
        for (std::size_t a = 0; a < m.size(); ++a)
            for (std::size_t b = 0; b < m.size(); ++b) CHECK(r.space.d(a, b) == m.d(a, b));
    }
}
