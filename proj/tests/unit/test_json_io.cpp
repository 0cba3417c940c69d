#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "support.hpp"
#include "urysohn/json_io.hpp"

using namespace support;

namespace {

// Through text, not just through the Json value.
Json reparse(const Json& j) { return Json::parse(dump(j)); }

}  // namespace

TEST_CASE("exact reals round trip") {
    Gen g(163);
    for (int i = 0; i < 500; ++i) {
        const ExactReal x = g.coin() ? ExactReal(g.rational(30)) : g.surd(7, 30);
        CHECK(exact_from_json(reparse(to_json(x))) == x);
    }
    CHECK(exact_from_json(Json(3)) == q(3));
    CHECK(error_of([] { (void)exact_from_json(Json(1.5)); }) == ErrorCode::ParseError);
    CHECK(error_of([] { (void)exact_from_json(Json("1/0")); }).has_value());
    CHECK(error_of([] { (void)exact_from_json(Json("sqrt(")); }) == ErrorCode::ParseError);
}

TEST_CASE("distance sets round trip") {
    Gen g(167);
    for (int i = 0; i < 100; ++i) {
        std::vector<ExactReal> vs;
        for (int k = 0, n = static_cast<int>(g.range(1, 4)); k < n; ++k) {
            const ExactReal v = g.positive_rational(6);
            if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
        }
        const auto mx = *std::max_element(vs.begin(), vs.end());
        const DistanceSet d = g.coin() ? dset(vs, mx) : dset(vs);
        CHECK(distance_set_from_json(reparse(to_json(d))) == d);
    }
    const Json lying = Json::parse(R"({"values": ["1", "3"], "cap": "unbounded", "closed": true})");
    CHECK(error_of([&] { (void)distance_set_from_json(lying); }) == ErrorCode::InvalidArgument);
    CHECK(error_of([] { (void)distance_set_from_json(Json::parse(R"({"values": "1"})")); }) ==
          ErrorCode::ParseError);
    CHECK(error_of([] { (void)distance_set_from_json(Json::parse("{}")); }) == ErrorCode::ParseError);
}

TEST_CASE("spaces round trip, ordered or not") {
    Gen g(173);
    const auto d = close(dset({q(1), q(3, 2)}), q(3));
    for (int i = 0; i < 100; ++i) {
        const Space x = g.space(static_cast<std::size_t>(g.range(0, 5)), d, g.coin());
        CHECK(space_from_json(reparse(to_json(x))) == x);
    }
    CHECK(error_of([] { (void)space_from_json(Json::parse(R"({"labels": ["a"], "dist": 0})")); }) ==
          ErrorCode::ParseError);
    CHECK(error_of([] { (void)space_from_json(Json::parse(R"({"labels": [1], "dist": [["0"]]})")); }) ==
          ErrorCode::ParseError);
}

TEST_CASE("codes and partial isometries round trip") {
    Gen g(179);
    for (int i = 0; i < 100; ++i) {
        DvsCode c;
        for (int k = 0, n = static_cast<int>(g.range(0, 8)); k < n; ++k)
            c.prefix.push_back(g.coin() ? ExactReal(0) : g.positive_rational(5));
        c.bounded = g.coin();
        CHECK(code_from_json(reparse(to_json(c))) == c);
    }
    const Space x = uniform_space(4);
    PartialIsometry p;
    p.pairs = {{0, 2}, {3, 1}};
    const Json j = reparse(to_json(p, x));
    CHECK(isometry_from_json(j, x).pairs == p.pairs);
    // Indices work as well as labels.
    CHECK(isometry_from_json(Json::parse("[[0, 2], [3, 1]]"), x).pairs == p.pairs);
    CHECK(error_of([&] { (void)isometry_from_json(Json::parse("[[0, 9]]"), x); }) == ErrorCode::ParseError);
    CHECK(error_of([&] { (void)isometry_from_json(Json::parse(R"([["nope", 1]])"), x); }) == ErrorCode::ParseError);
    CHECK(error_of([&] { (void)code_from_json(Json::parse(R"({"prefix": ["1"], "bounded": 1})")); }) ==
          ErrorCode::ParseError);
}

TEST_CASE("encoded models round trip") {
    for (const auto& d : {dset({q(1), q(2)}), dset({q(1), surd(0, 1, 2)}, q(3))}) {
        const auto m = model_encode(d);
        const auto back = model_from_json(reparse(to_json(m)));
        CHECK(back.universe == m.universe);
        CHECK(back.c == m.c);
        CHECK(back.plus == m.plus);
        CHECK(back.sample == m.sample);
        CHECK(back.relation == m.relation);
    }
}

TEST_CASE("load_json reads files") {
    const std::string path = "test_json_io_tmp.json";
    {
        std::ofstream out(path);
        out << dump(to_json(uniform_space(2)));
    }
    CHECK(space_from_json(load_json(path)) == uniform_space(2));
    std::remove(path.c_str());
    CHECK(error_of([] { (void)load_json("/nonexistent/file.json"); }).has_value());
}
