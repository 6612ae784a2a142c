#include "oracles.hpp"
#include "test_util.hpp"

#include "tropdeg/realma.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using namespace tropdeg;

namespace {

HPolyhedron square(long r = 1)
{
    return ConvexPLFunction::box({frac(-r), frac(-r)}, {frac(r), frac(r)});
}

HPolyhedron interval(Rational lo, Rational hi)
{
    return ConvexPLFunction::box({lo}, {hi});
}

ConvexPLFunction random_pl(std::mt19937_64& rng, const HPolyhedron& domain, int max_pieces = 7)
{
    std::uniform_int_distribution<int> g(-8, 8);
    std::vector<AffinePiece> pieces;
    const int k = 2 + static_cast<int>(rng() % static_cast<unsigned>(max_pieces - 1));
    for (int i = 0; i < k; ++i) {
        pieces.push_back({{frac(g(rng), 4), frac(g(rng), 4)}, frac(g(rng), 8)});
    }
    return ConvexPLFunction(pieces, domain);
}

double total(const AtomicMeasure& m)
{
    return m.total_mass().get_d();
}

} // namespace

TEST_SUITE("realma")
{
    TEST_CASE("Alexandrov measures of basic kinks")
    {
        const ConvexPLFunction abs({{{frac(-1)}, 0}, {{frac(1)}, 0}}, interval(-1, 1));
        const auto m = ma_alexandrov(abs);
        REQUIRE(m.size() == 1);
        CHECK(m.atoms()[0].point == qv({0}));
        CHECK(m.atoms()[0].mass == 2);

        const ConvexPLFunction corner({{{0, 0}, 0}, {{1, 0}, 0}, {{0, 1}, 0}}, square());
        const auto m2 = ma_alexandrov(corner);
        REQUIRE(m2.size() == 1);
        CHECK(m2.atoms()[0].point == qv({0, 0}));
        CHECK(m2.atoms()[0].mass == frac(1, 2));

        CHECK(ma_alexandrov(ConvexPLFunction({{{2, frac(-1, 3)}, 5}}, square())).empty());
    }

    TEST_CASE("degenerate domains are rejected")
    {
        HPolyhedron line;
        line.dim = 2;
        line.add_equation({1, -1}, 0);
        line.add_inequality({1, 0}, 1);
        line.add_inequality({-1, 0}, 1);
        CHECK_THROWS_AS(ma_alexandrov(ConvexPLFunction({{{0, 0}, 0}, {{1, 0}, 0}}, line)), std::invalid_argument);
        CHECK_THROWS_AS(ConvexPLFunction({}, square()), std::invalid_argument);
        CHECK_THROWS_AS(ConvexPLFunction({{{1}, 0}}, square()), std::invalid_argument);
    }

    TEST_CASE("redundant pieces")
    {
        // w1 - 10 never wins on the square
        const ConvexPLFunction f({{{0, 0}, 0}, {{1, 0}, 0}, {{1, 0}, -10}}, square());
        CHECK(f.redundant_pieces() == std::vector<std::size_t>{2});
        CHECK(f.without_redundant().pieces().size() == 2);
        CHECK(f.value(qv({frac(1, 2), 3})) == frac(1, 2));
        CHECK(f.value(RealVector{-0.5, 3.0}) == 0.0);
    }

    TEST_CASE("mass balance against the gradient hull")
    {
        // on a domain large enough to contain every vertex, the total mass is
        // the area of the convex hull of all gradients
        std::mt19937_64 rng(12);
        for (int trial = 0; trial < 15; ++trial) {
            const auto f = random_pl(rng, square(1000), 6);
            std::vector<std::array<double, 2>> grads;
            for (const auto& p : f.pieces()) {
                grads.push_back({p.gradient[0].get_d(), p.gradient[1].get_d()});
            }
            CHECK(total(ma_alexandrov(f)) == doctest::Approx(oracle::hull_area(grads)).epsilon(1e-12));
        }
    }

    TEST_CASE("adding an affine function does not change the measure")
    {
        std::mt19937_64 rng(13);
        for (int trial = 0; trial < 15; ++trial) {
            const auto f = random_pl(rng, square());
            std::vector<AffinePiece> shifted;
            for (auto p : f.pieces()) {
                p.gradient[0] += frac(3, 7);
                p.gradient[1] -= 2;
                p.offset += frac(5, 3);
                shifted.push_back(p);
            }
            const auto a = ma_alexandrov(f);
            const auto b = ma_alexandrov(ConvexPLFunction(shifted, f.domain()));
            REQUIRE(a.size() == b.size());
            for (std::size_t i = 0; i < a.size(); ++i) {
                CHECK(a.atoms()[i].point == b.atoms()[i].point);
                CHECK(a.atoms()[i].mass == b.atoms()[i].mass);
            }
        }
    }

    TEST_CASE("one-dimensional monotonicity")
    {
        // f <= g with equal boundary values forces MA(f)[-1,1] >= MA(g)[-1,1]
        std::mt19937_64 rng(14);
        std::uniform_int_distribution<int> s(-6, 6);
        for (int trial = 0; trial < 50; ++trial) {
            const Rational a = frac(s(rng), 2);
            const Rational b = frac(s(rng), 2);
            // g is the chord, f dips below it
            const Rational slope = (b - a) / 2;
            const ConvexPLFunction g({{{slope}, (a + b) / 2}}, interval(-1, 1));
            const Rational depth = frac(1 + static_cast<long>(rng() % 5), 2);
            const Rational mid = (a + b) / 2 - depth;
            const ConvexPLFunction f({{{mid - a}, mid}, {{b - mid}, mid}}, interval(-1, 1));
            CHECK(f.value(qv({-1})) == a);
            CHECK(f.value(qv({1})) == b);
            CHECK(ma_alexandrov(f).total_mass() >= ma_alexandrov(g).total_mass());
        }
    }

    TEST_CASE("smooth grid densities")
    {
        const double h = 0.05;
        const std::size_t n = 21;
        std::vector<double> half_sq, quad, affine, saddle;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const double x = -0.5 + h * static_cast<double>(i);
                const double y = -0.5 + h * static_cast<double>(j);
                half_sq.push_back(0.5 * (x * x + y * y));
                quad.push_back(x * x + 1.5 * y * y);
                affine.push_back(2.0 * x - y + 1.0);
                saddle.push_back(x * x - y * y);
            }
        }
        auto all_near = [](const DensityGrid& g, double v) {
            for (double d : g.values) {
                if (std::abs(d - v) > 1e-8) {
                    return false;
                }
            }
            return true;
        };
        const auto d1 = ma_smooth_grid(half_sq, {n, n}, h);
        CHECK(d1.shape == std::vector<std::size_t>{n - 2, n - 2});
        CHECK(all_near(d1, 1.0));
        CHECK(d1.nonconvex == 0);
        CHECK(all_near(ma_smooth_grid(quad, {n, n}, h), 6.0));
        const auto d3 = ma_smooth_grid(affine, {n, n}, h);
        CHECK(all_near(d3, 0.0));
        CHECK(d3.nonconvex == 0);
        const auto d4 = ma_smooth_grid(saddle, {n, n}, h);
        CHECK(d4.nonconvex == (n - 2) * (n - 2));
        CHECK(all_near(d4, 0.0));
        CHECK_THROWS_AS(ma_smooth_grid({1, 2}, {2}, h), std::invalid_argument);
        CHECK_THROWS_AS(ma_smooth_grid(half_sq, {n, n - 1}, h), std::invalid_argument);
    }

    TEST_CASE("tangent-plane maxima converge to the smooth density")
    {
        // f = |w|^2 / 2 replaced by the max of its tangent planes at grid
        // nodes; integrate a bump that vanishes on the boundary
        auto bump = [](double x, double y) { return std::cos(std::numbers::pi * x / 2) * std::cos(std::numbers::pi * y / 2); };
        std::vector<double> errors;
        for (long k : {2L, 4L}) {
            const Rational h = frac(1, k);
            std::vector<AffinePiece> pieces;
            std::vector<double> values;
            const long m = 2 * k + 1;
            for (long i = 0; i < m; ++i) {
                for (long j = 0; j < m; ++j) {
                    const Rational x = -1 + h * i;
                    const Rational y = -1 + h * j;
                    pieces.push_back({{x, y}, -(x * x + y * y) / 2});
                    values.push_back(0.5 * Rational(x * x + y * y).get_d());
                }
            }
            const auto atoms = ma_alexandrov(ConvexPLFunction(pieces, square()));
            double atom_sum = 0.0;
            for (const auto& a : atoms.atoms()) {
                atom_sum += a.mass.get_d() * bump(a.point[0].get_d(), a.point[1].get_d());
            }
            const double hd = h.get_d();
            const auto grid = ma_smooth_grid(values, {static_cast<std::size_t>(m), static_cast<std::size_t>(m)}, hd);
            double grid_sum = 0.0;
            for (long i = 1; i + 1 < m; ++i) {
                for (long j = 1; j + 1 < m; ++j) {
                    grid_sum += grid.values[static_cast<std::size_t>((i - 1) * (m - 2) + (j - 1))] *
                                bump(-1 + hd * i, -1 + hd * j) * hd * hd;
                }
            }
            errors.push_back(std::abs(atom_sum - grid_sum));
        }
        CHECK(errors[1] <= 0.5 * errors[0]);
    }

    TEST_CASE("MAlog at p = 1 for kinks and quadratics")
    {
        const ToricDegeneration d({1, 1}, {0, 0});
        const ScaleFactor s(Complex(1e-3, 0.0));
        const ConvexPLFunction kink({{{1}, frac(-1, 2)}, {{-1}, frac(1, 2)}}, interval(0, 1));
        const auto r = verify_malog_dim1(kink, d, s, {{0.1, 0.9}, {0.4, 0.6}, {0.05, 0.45}});
        CHECK(r.rows[0].real_mass == doctest::Approx(2.0 * s.eps()));
        CHECK(r.rows[0].relative_error < 1e-3);
        CHECK(r.rows[1].relative_error < 1e-3);
        CHECK(std::abs(r.rows[2].complex_mass) < 1e-9);

        const auto q = verify_malog_dim1_grid([](double w) { return 0.5 * w * w; }, 0, 1, 0.05, d, s,
                                              {{0.1, 0.9}, {0.25, 0.5}});
        CHECK(q.rows[0].real_mass == doctest::Approx(0.8 * s.eps()));
        CHECK(q.rows[0].relative_error < 1e-3);
        CHECK(q.rows[1].relative_error < 1e-3);

        const ConvexPLFunction affine({{{3}, 1}}, interval(0, 1));
        const auto a = verify_malog_dim1(affine, d, s, {{0.2, 0.7}});
        CHECK(a.rows[0].real_mass == 0.0);
        CHECK(std::abs(a.rows[0].complex_mass) < 1e-9);
    }

    TEST_CASE("MAlog with several sheets")
    {
        const ToricDegeneration d({2, 4}, {0, 0});
        const ScaleFactor s(Complex(1e-4, 0.0));
        // w ranges over [0, 1/2] on this fiber
        const ConvexPLFunction kink({{{1}, frac(-1, 4)}, {{-1}, frac(1, 4)}}, interval(0, frac(1, 2)));
        const auto r = verify_malog_dim1(kink, d, s, {{0.1, 0.4}});
        CHECK(r.sheet_factor == 2.0);
        CHECK(r.rows[0].relative_error < 1e-3);
    }

    TEST_CASE("MAlog rejects unresolved intervals")
    {
        const ToricDegeneration d({1, 1}, {0, 0});
        const ScaleFactor s(Complex(1e-3, 0.0));
        const ConvexPLFunction kink({{{1}, frac(-1, 2)}, {{-1}, frac(1, 2)}}, interval(0, 1));
        CHECK_THROWS_AS(verify_malog_dim1(kink, d, s, {{0.1, 0.5}}), std::invalid_argument);
        CHECK_THROWS_AS(verify_malog_dim1(kink, d, s, {{0.0, 0.6}}), std::invalid_argument);
        CHECK_THROWS_AS(verify_malog_dim1(kink, d, s, {{0.6, 0.3}}), std::invalid_argument);
        CHECK_THROWS_AS(verify_malog_dim1(kink, ToricDegeneration({1, 1, 1}, {0, 0, 0}), s, {{0.1, 0.3}}),
                        std::invalid_argument);
        CHECK_THROWS_AS(verify_malog_dim1_grid([](double w) { return w * w; }, 0, 1, 0.1, d, s, {{0.15, 0.5}}),
                        std::invalid_argument);
    }

    TEST_CASE("boundary traces")
    {
        const ConvexPLFunction corner({{{0, 0}, 0}, {{1, 0}, 0}, {{0, 1}, 0}}, square());
        const auto b = boundary_trace(corner);
        // four corners plus the kinks at (0, -1) and (-1, 0)
        CHECK(b.points.size() == 6);
        for (std::size_t i = 0; i < b.points.size(); ++i) {
            CHECK(b.values[i] == corner.value(b.points[i]));
        }
        const auto b1 = boundary_trace(ConvexPLFunction({{{1}, 0}}, interval(-1, 2)));
        CHECK(b1.points == std::vector<RationalVector>{{-1}, {2}});
        CHECK(b1.values == std::vector<Rational>{-1, 2});
    }

    TEST_CASE("solver: one atom on an interval")
    {
        const AtomicMeasure target({{{0}, 2}});
        const BoundaryData bd{{{-1}, {1}}, {0, 0}};
        const auto sol = solve_rma(target, bd);
        REQUIRE(sol.heights.size() == 1);
        CHECK(sol.heights[0] == doctest::Approx(-1.0).epsilon(1e-9));
        const auto back = ma_alexandrov(sol.function);
        REQUIRE(back.size() == 1);
        CHECK(back.atoms()[0].mass.get_d() == doctest::Approx(2.0).epsilon(1e-9));
    }

    TEST_CASE("solver: zero target gives the convex envelope")
    {
        const BoundaryData bd{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}, {0, 1, 3, 2}};
        const auto sol = solve_rma(AtomicMeasure(), bd);
        CHECK(sol.heights.empty());
        // the data is affine: f = 1.5 + 0.5 x + y
        CHECK(sol.function.value(RealVector{0.0, 0.0}) == doctest::Approx(1.5));
        CHECK(sol.function.value(RealVector{0.5, -0.5}) == doctest::Approx(1.25));
    }

    TEST_CASE("solver round trip")
    {
        std::mt19937_64 rng(31);
        int done = 0;
        while (done < 8) {
            const auto g = random_pl(rng, square());
            const auto target = ma_alexandrov(g);
            if (target.empty() || target.size() > 9) {
                continue;
            }
            const auto sol = solve_rma(target, boundary_trace(g));
            for (std::size_t j = 0; j < sol.nodes.size(); ++j) {
                CHECK(std::abs(sol.heights[j] - g.value(sol.nodes[j]).get_d()) < 1e-6);
            }
            // the returned function carries the target measure
            const auto back = ma_alexandrov(sol.function);
            CHECK(std::abs(total(back) - total(target)) < 1e-6 * total(target));
            ++done;
        }
    }

    TEST_CASE("solver errors")
    {
        const BoundaryData square_bd{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}, {0, 0, 0, 0}};
        // non-convex along the bottom edge
        const BoundaryData bent{{{-1, -1}, {0, -1}, {1, -1}, {1, 1}, {-1, 1}}, {0, 1, 0, 0, 0}};
        CHECK_THROWS_AS(solve_rma(AtomicMeasure({{{0, 0}, 1}}), bent), InfeasibleError);
        // mass on the boundary cannot be carried
        CHECK_THROWS_AS(solve_rma(AtomicMeasure({{{1, 0}, 1}}), square_bd), InfeasibleError);
        // interior boundary point
        const BoundaryData inner{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}, {0, 0}}, {0, 0, 0, 0, 0}};
        CHECK_THROWS_AS(solve_rma(AtomicMeasure(), inner), std::invalid_argument);
        // too few sweeps
        RmaOptions tight;
        tight.max_sweeps = 1;
        const AtomicMeasure many({{{frac(-1, 2), 0}, 1}, {{frac(1, 2), 0}, 1}, {{0, frac(1, 2)}, 1}});
        try {
            solve_rma(many, square_bd, tight);
            FAIL("expected non-convergence");
        } catch (const NonConvergenceError& e) {
            CHECK(e.residual() > 0.0);
        }
    }
}
