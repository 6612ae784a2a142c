#include "test_util.hpp"

#include "tropdeg/amoeba.hpp"
#include "tropdeg/roots.hpp"
#include "tropdeg/tropical.hpp"

#include <doctest.h>

#include <random>

using namespace tropdeg;

namespace {

PolyhedralComplex trop_complex(const LaurentPolynomial& f)
{
    return tropical_hypersurface(TropicalPolynomial::from_laurent(f));
}

} // namespace

TEST_SUITE("amoeba")
{
    TEST_CASE("scale factor")
    {
        const ScaleFactor s(Complex(std::exp(-10.0), 0.0));
        CHECK(s.eps() == doctest::Approx(0.1));
        CHECK_THROWS_AS(ScaleFactor(Complex(0.5, 0.0)), std::invalid_argument);
        CHECK_THROWS_AS(ScaleFactor(Complex(0.0, 0.0)), std::invalid_argument);
        CHECK(ScaleFactor(Complex(1e-4, 0.0)).eps() < ScaleFactor(Complex(1e-3, 0.0)).eps());
    }

    TEST_CASE("log_t examples")
    {
        const double t = 0.01;
        const ScaleFactor s(Complex(t, 0.0));
        auto w = log_t({Complex(t), Complex(t * t)}, s);
        CHECK(w[0] == doctest::Approx(1.0));
        CHECK(w[1] == doctest::Approx(2.0));
        w = log_t({Complex(1.0), Complex(1.0)}, s);
        CHECK(w[0] == 0.0);
        const ScaleFactor s10(Complex(std::exp(-10.0), 0.0));
        CHECK(log_t({Complex(std::exp(-5.0))}, s10)[0] == doctest::Approx(0.5));
        CHECK_THROWS_AS(log_t({Complex(0.0)}, s), std::invalid_argument);
    }

    TEST_CASE("log_t is additive on products")
    {
        std::mt19937_64 rng(1);
        std::uniform_real_distribution<double> u(-3.0, 3.0);
        const ScaleFactor s(Complex(1e-3, 2e-4));
        for (int i = 0; i < 100; ++i) {
            const Complex x = std::polar(std::exp(u(rng)), u(rng));
            const Complex y = std::polar(std::exp(u(rng)), u(rng));
            const auto lx = log_t({x}, s)[0];
            const auto ly = log_t({y}, s)[0];
            CHECK(std::abs(log_t({x * y}, s)[0] - (lx + ly)) < 1e-12);
        }
    }

    TEST_CASE("root finder")
    {
        // (z - 1)(z - 2)(z + 3i) = z^3 + (-3 + 3i) z^2 + (2 - 9i) z + 6i
        const auto r = find_roots({Complex(0, 6), Complex(2, -9), Complex(-3, 3), Complex(1, 0)});
        REQUIRE(r.converged);
        REQUIRE(r.roots.size() == 3);
        for (Complex expect : {Complex(1, 0), Complex(2, 0), Complex(0, -3)}) {
            double best = 1e9;
            for (auto z : r.roots) {
                best = std::min(best, std::abs(z - expect));
            }
            CHECK(best < 1e-12);
        }
        // badly scaled coefficients, as produced at small t
        std::vector<Complex> c{Complex(1e-30), Complex(1.0), Complex(1e-10), Complex(1e-20)};
        const auto r2 = find_roots(c);
        CHECK(r2.converged);
        for (auto z : r2.roots) {
            Complex p, dp;
            horner(c, z, p, dp);
            double scale = 0.0;
            for (std::size_t k = 0; k < c.size(); ++k) {
                scale += std::abs(c[k]) * std::pow(std::abs(z), static_cast<double>(k));
            }
            CHECK(std::abs(p) < 1e-12 * scale);
        }
    }

    TEST_CASE("sampling z - t concentrates at w = 1")
    {
        const auto f = parse_polynomial("z - t");
        SampleOptions o;
        o.count = 200;
        const auto cloud = sample_hypersurface(f, ScaleFactor(Complex(1e-3, 0.0)), make_window(1, -3, 3), o);
        REQUIRE(cloud.points.size() == 200);
        for (const auto& p : cloud.points) {
            CHECK(std::abs(p[0] - 1.0) < 1e-12);
        }
        CHECK(one_sided_hausdorff(cloud.points, trop_complex(f), make_window(1, -3, 3)) < 1e-12);
    }

    TEST_CASE("sampled points solve the equation")
    {
        const auto f = parse_polynomial("z1^2*z2 + t*z2^3 + (1+2i)*z1 + t^2");
        const ScaleFactor s(Complex(2e-3, 0.0));
        SampleOptions o;
        o.count = 500;
        o.seed = 3;
        const auto cloud = sample_hypersurface(f, s, make_window(2, -2, 3), o);
        CHECK(cloud.points.size() > 500);
        CHECK(cloud.rejected_residual == 0);
        // reconstruct moduli only: the residual check lives in the sampler, so
        // here test the Log_t image lies near the tropical curve
        const double d = one_sided_hausdorff(cloud.points, trop_complex(f), make_window(2, -2, 3));
        CHECK(d < 0.5);
    }

    TEST_CASE("clouds are reproducible across thread counts")
    {
        const auto f = parse_polynomial("z1 + z2 + t");
        const ScaleFactor s(Complex(1e-3, 0.0));
        SampleOptions o;
        o.count = 5000;
        o.seed = 42;
        o.threads = 1;
        const auto a = sample_hypersurface(f, s, make_window(2, -1, 3), o);
        o.threads = 4;
        const auto b = sample_hypersurface(f, s, make_window(2, -1, 3), o);
        CHECK(a.points == b.points);
        o.seed = 43;
        const auto c = sample_hypersurface(f, s, make_window(2, -1, 3), o);
        CHECK(a.points != c.points);
    }

    TEST_CASE("one-sided Hausdorff distance")
    {
        const auto complex = trop_complex(parse_polynomial("z1 + z2 + 1"));
        const Window w = make_window(2, -5, 5);
        CHECK(one_sided_hausdorff({{0.0, 0.0}, {3.0, 0.0}, {0.0, 2.5}, {-2.0, -2.0}}, complex, w) < 1e-9);
        // distance 1 from the ray {(x, 0) : x >= 0}
        CHECK(one_sided_hausdorff({{3.0, 1.0}}, complex, w) == doctest::Approx(1.0));
        // points outside the window are ignored
        CHECK(one_sided_hausdorff({{3.0, 1.0}, {100.0, 50.0}}, complex, w) == doctest::Approx(1.0));
        CHECK_THROWS_AS(one_sided_hausdorff({{100.0, 50.0}}, complex, w), std::invalid_argument);
    }

    TEST_CASE("convergence report")
    {
        SampleOptions o;
        o.count = 100;
        const auto r = convergence_report(parse_polynomial("z - t"), Complex(1e-2, 0.0), 0.1, 3, make_window(1, -3, 3), o);
        REQUIRE(r.rows.size() == 3);
        for (const auto& row : r.rows) {
            REQUIRE(row.distance);
            CHECK(*row.distance < 1e-12);
        }
        CHECK(r.rows[1].abs_t == doctest::Approx(1e-3));

        // a window that misses the amoeba flags every row
        const auto bad =
            convergence_report(parse_polynomial("z - t"), Complex(1e-2, 0.0), 0.1, 2, make_window(1, 5, 6), o);
        for (const auto& row : bad.rows) {
            CHECK_FALSE(row.distance);
            CHECK_FALSE(row.error.empty());
        }
        CHECK_THROWS_AS(convergence_report(parse_polynomial("z - t"), Complex(0.5, 0.0), 0.1, 2, make_window(1, -3, 3), o),
                        std::invalid_argument);
    }
}
