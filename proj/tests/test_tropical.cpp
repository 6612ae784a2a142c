#include "oracles.hpp"
#include "test_util.hpp"

#include "tropdeg/polynomial.hpp"
#include "tropdeg/tropical.hpp"

#include <doctest.h>

#include <numbers>
#include <random>
#include <set>

using namespace tropdeg;

namespace {

TropicalPolynomial trop(const char* text, std::size_t vars = 0)
{
    return TropicalPolynomial::from_laurent(parse_polynomial(text, vars));
}

std::map<std::vector<int>, double> as_doubles(const TropicalPolynomial& f)
{
    std::map<std::vector<int>, double> out;
    for (const auto& [alpha, c] : f.terms()) {
        out[alpha] = c.get_d();
    }
    return out;
}

RationalVector q(std::initializer_list<int> xs)
{
    RationalVector v;
    for (int x : xs) {
        v.emplace_back(x);
    }
    return v;
}

// angle of each ray cell of a planar complex
std::vector<double> complex_ray_angles(const PolyhedralComplex& c)
{
    std::vector<double> out;
    for (const auto& cell : c.cells) {
        if (cell.dimension == 1 && cell.generators.rays.size() == 1) {
            const auto r = to_doubles(cell.generators.rays[0]);
            double phi = std::atan2(r[1], r[0]);
            if (phi < 0) {
                phi += 2.0 * std::numbers::pi;
            }
            out.push_back(phi);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_SUITE("tropical")
{
    TEST_CASE("weights are coefficient valuations")
    {
        const auto f = trop("z1 + z2 + t");
        CHECK(f.terms().size() == 3);
        CHECK(f.terms().at({1, 0}) == 0);
        CHECK(f.terms().at({0, 1}) == 0);
        CHECK(f.terms().at({0, 0}) == 1);

        const auto g = trop("t*z - 1");
        CHECK(g.terms().at({1}) == 1);
        CHECK(g.terms().at({0}) == 0);

        const auto h = trop("z1*z2 + t*(1 + z1^3 + z2^3)");
        CHECK(h.terms().at({1, 1}) == 0);
        CHECK(h.terms().at({0, 0}) == 1);
        CHECK(h.terms().at({3, 0}) == 1);
        CHECK(h.terms().at({0, 3}) == 1);

        CHECK_THROWS_AS(TropicalPolynomial::from_laurent(parse_polynomial("z1 - z1")), std::invalid_argument);
    }

    TEST_CASE("evaluation and ties")
    {
        const auto f = trop("z1 + z2 + 1");
        auto v = trop_eval(f, q({2, 3}));
        CHECK(v.value == 0);
        CHECK(v.argmin == std::vector<Exponent>{{0, 0}});
        v = trop_eval(f, q({0, 5}));
        CHECK(v.value == 0);
        CHECK(v.argmin.size() == 2);
        CHECK(in_tropical_hypersurface(f, q({0, 0})));
        CHECK_FALSE(in_tropical_hypersurface(f, q({1, 2})));

        const auto g = trop("t + z");
        v = trop_eval(g, q({1}));
        CHECK(v.value == 1);
        CHECK(v.argmin.size() == 2);
        CHECK(in_tropical_hypersurface(g, q({1})));
    }

    TEST_CASE("tropical line against the circle oracle")
    {
        for (const char* text : {"z1 + z2 + 1", "z1 + z2 + t"}) {
            const auto f = trop(text);
            const auto c = tropical_hypersurface(f);
            REQUIRE(c.f_vector() == std::vector<std::size_t>{1, 3});
            const auto vertex = to_doubles(c.cells[0].generators.vertices.at(0));
            const auto expected = oracle::tropical_ray_angles(as_doubles(f), vertex[0], vertex[1]);
            const auto got = complex_ray_angles(c);
            REQUIRE(expected.size() == got.size());
            for (std::size_t i = 0; i < got.size(); ++i) {
                CHECK(got[i] == doctest::Approx(expected[i]).epsilon(1e-9));
            }
            const double shift = f.terms().at({0, 0}).get_d();
            CHECK(vertex[0] == shift);
            CHECK(vertex[1] == shift);
        }
    }

    TEST_CASE("univariate kink is a point")
    {
        const auto c = tropical_hypersurface(trop("z - t"));
        REQUIRE(c.f_vector() == std::vector<std::size_t>{1});
        CHECK(c.cells[0].generators.vertices[0] == q({1}));
    }

    TEST_CASE("single term gives an empty complex with a warning")
    {
        const auto c = tropical_hypersurface(trop("t^2*z1*z2"));
        CHECK(c.empty());
        CHECK_FALSE(c.warnings.empty());
    }

    TEST_CASE("grid shadow of the corner locus lies near the complex")
    {
        // a conic with a bounded cell: several vertices and edges
        const auto f = trop("1 + z1 + z2 + t*z1*z2 + t^3*z1^2 + t^3*z2^2");
        const auto c = tropical_hypersurface(f);
        const auto pts = oracle::tropical_grid_points(as_doubles(f), -4, 4, 200, 1e-9);
        REQUIRE_FALSE(pts.empty());
        for (const auto& p : pts) {
            double best = INFINITY;
            for (const auto& cell : c.cells) {
                best = std::min(best, distance_to_polyhedron(to_double_system(cell.polyhedron), p));
            }
            CHECK(best < 1e-9);
        }
        // and every relative-interior point of every cell is a tie
        for (const auto& cell : c.cells) {
            const auto x = relative_interior_point(cell.generators, 2);
            CHECK(in_tropical_hypersurface(f, x));
        }
    }

    TEST_CASE("cells are exact tie loci with the recorded dual face")
    {
        std::mt19937_64 rng(3);
        std::uniform_int_distribution<int> e(0, 3);
        std::uniform_int_distribution<int> w(-6, 6);
        for (int trial = 0; trial < 30; ++trial) {
            std::map<Exponent, Rational> terms;
            for (int k = 0; k < 5; ++k) {
                terms[{e(rng), e(rng)}] = frac(w(rng), 2);
            }
            if (terms.size() < 2) {
                continue;
            }
            TropicalPolynomial f(2, terms);
            const auto c = tropical_hypersurface(f);
            for (const auto& cell : c.cells) {
                const auto x = relative_interior_point(cell.generators, 2);
                const auto v = trop_eval(f, x);
                std::vector<std::vector<int>> arg(v.argmin.begin(), v.argmin.end());
                CHECK(arg == cell.dual_face);
                for (const auto& vert : cell.generators.vertices) {
                    CHECK(in_tropical_hypersurface(f, vert));
                }
            }
        }
    }

    TEST_CASE("generic weights give one region per term")
    {
        // regions = connected components of the complement; with generic
        // weights every term is minimal somewhere, so count the distinct
        // argmins over a fine grid and compare with the term count
        std::mt19937_64 rng(8);
        std::uniform_int_distribution<int> w(-50, 50);
        for (int trial = 0; trial < 5; ++trial) {
            std::map<Exponent, Rational> terms{{{0, 0}, frac(w(rng), 17)},
                                               {{1, 0}, frac(w(rng), 19)},
                                               {{0, 1}, frac(w(rng), 23)},
                                               {{1, 1}, frac(w(rng), 29)}};
            TropicalPolynomial f(2, terms);
            std::set<Exponent> seen;
            for (int i = -100; i <= 100; ++i) {
                for (int j = -100; j <= 100; ++j) {
                    const auto v = trop_eval(f, {frac(i, 4), frac(j, 4)});
                    if (v.argmin.size() == 1) {
                        seen.insert(v.argmin[0]);
                    }
                }
            }
            CHECK(seen.size() == terms.size());
            const auto c = tropical_hypersurface(f);
            CHECK(c.f_vector() == std::vector<std::size_t>{2, 5});
        }
    }

    TEST_CASE("trop_eval is concave")
    {
        std::mt19937_64 rng(21);
        std::uniform_int_distribution<int> x(-20, 20);
        const auto f = trop("1 + z1 + z2 + t*z1*z2 + t^3*z1^2");
        for (int trial = 0; trial < 200; ++trial) {
            const RationalVector a{frac(x(rng), 3), frac(x(rng), 5)};
            const RationalVector b{frac(x(rng), 7), frac(x(rng), 2)};
            const Rational lambda = frac(static_cast<long>(rng() % 11), 10);
            RationalVector mid{lambda * a[0] + (1 - lambda) * b[0], lambda * a[1] + (1 - lambda) * b[1]};
            CHECK(trop_eval(f, mid).value >= lambda * trop_eval(f, a).value + (1 - lambda) * trop_eval(f, b).value);
        }
    }

    TEST_CASE("monomials evaluate to alpha.w")
    {
        TropicalPolynomial f(3, {{{2, -1, 5}, Rational(0)}});
        const RationalVector w{frac(1, 3), Rational(-2), frac(7, 5)};
        CHECK(trop_eval(f, w).value == frac(2, 3) + 2 + 7);
    }

    TEST_CASE("prevariety of given generators")
    {
        const auto line = trop("z1 + z2 + 1");
        TropicalPrevariety one({line});
        TropicalPrevariety twice({line, line});
        CHECK(TropicalPrevariety::may_strictly_contain_variety);
        CHECK(one.contains(q({0, 0})));
        std::mt19937_64 rng(2);
        std::uniform_int_distribution<int> x(-4, 4);
        for (int trial = 0; trial < 200; ++trial) {
            const RationalVector w{Rational(x(rng)), Rational(x(rng))};
            CHECK(one.contains(w) == in_tropical_hypersurface(line, w));
            CHECK(twice.contains(w) == one.contains(w));
        }
        CHECK(twice.cells().size() == tropical_hypersurface(line).cells.size());
        CHECK_THROWS_AS(TropicalPrevariety({}), std::invalid_argument);
        CHECK_THROWS_AS(TropicalPrevariety({line, trop("z - 1")}), std::invalid_argument);
    }
}
