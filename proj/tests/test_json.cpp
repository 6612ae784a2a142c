#include "test_util.hpp"

#include "tropdeg/json_io.hpp"

#include <doctest.h>

using namespace tropdeg;

TEST_SUITE("json")
{
    TEST_CASE("rationals round-trip exactly")
    {
        for (const Rational& q : {frac(0), frac(-7, 3), frac(1, 1000000007), frac(22, 7)}) {
            CHECK(rational_from_json(to_json(q)) == q);
        }
        CHECK(to_json(frac(6, 4)) == Json("3/2"));
        CHECK(rational_from_json(Json(5)) == 5);
        CHECK_THROWS_AS(rational_from_json(Json("x/2")), SchemaError);
        CHECK_THROWS_AS(rational_from_json(Json(0.5)), SchemaError);
        CHECK_THROWS_AS(rational_from_json(Json("1/0")), SchemaError);
    }

    TEST_CASE("snc models")
    {
        const auto j = Json::parse(R"({
            "components": [{"label": "E0", "b": 1, "a": "0"}, {"label": "E1", "b": 1, "a": 0}],
            "strata": [["E0", "E1"]],
            "masses": {"E0,E1": 1.0}
        })");
        const auto m = snc_from_json(j);
        CHECK(m.components().size() == 2);
        const auto back = snc_from_json(to_json(m));
        CHECK(back.components().size() == 2);
        CHECK(to_json(back) == to_json(m));

        auto bad = j;
        bad["components"][0].erase("b");
        CHECK_THROWS_AS(snc_from_json(bad), SchemaError);
        CHECK_THROWS_AS(snc_from_json(Json::array()), SchemaError);
    }

    TEST_CASE("convex PL functions and measures")
    {
        const auto j = Json::parse(R"({
            "pieces": [[[0, 0], 0], [[1, 0], "0"], {"gradient": [0, 1], "offset": "0"}],
            "domain": {"box": {"lo": [-1, -1], "hi": [1, 1]}}
        })");
        const auto f = convex_pl_from_json(j);
        CHECK(f.pieces().size() == 3);
        const auto g = convex_pl_from_json(to_json(f));
        CHECK(g.pieces() == f.pieces());
        const auto m = ma_alexandrov(g);
        const auto back = atomic_measure_from_json(to_json(m));
        REQUIRE(back.size() == 1);
        CHECK(back.atoms()[0].mass == frac(1, 2));

        const auto bd = boundary_from_json(to_json(boundary_trace(f)));
        CHECK(bd.points.size() == 6);

        CHECK_THROWS_AS(convex_pl_from_json(Json::parse(R"({"pieces": []})")), std::invalid_argument);
        CHECK_THROWS_AS(boundary_from_json(Json::parse(R"({"points": [[0]], "values": []})")), SchemaError);
    }
}
