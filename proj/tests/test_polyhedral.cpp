#include "oracles.hpp"
#include "test_util.hpp"

#include "tropdeg/polyhedral.hpp"

#include <doctest.h>

#include <numeric>

using namespace tropdeg;

TEST_SUITE("polyhedral")
{
    TEST_CASE("sigma_H volumes")
    {
        CHECK(sigma_h_volume(WeightedSimplex({0, 1}, {1, 1})) == 1);
        CHECK(sigma_h_volume(WeightedSimplex({0, 1, 2}, {1, 1, 1})) == frac(1, 2));
        CHECK(sigma_h_volume(WeightedSimplex({4}, {2})) == frac(1, 2));
    }

    TEST_CASE("sigma_H volume does not depend on the eliminated coordinate")
    {
        const std::vector<std::vector<int>> bs{{1, 1}, {1, 2}, {2, 3, 5}, {1, 1, 1, 1}, {3, 1, 2, 4}, {7}};
        for (const auto& b : bs) {
            std::vector<std::size_t> idx(b.size());
            std::iota(idx.begin(), idx.end(), 0);
            const WeightedSimplex s(idx, b);
            const Rational ref = sigma_h_volume(s, 0);
            for (std::size_t i = 1; i < b.size(); ++i) {
                CHECK(sigma_h_volume(s, i) == ref);
            }
            // closed form 1 / (p! prod b)
            Rational expected = 1;
            for (std::size_t k = 1; k < b.size(); ++k) {
                expected /= static_cast<long>(k);
            }
            for (int x : b) {
                expected /= x;
            }
            CHECK(ref == expected);
        }
    }

    TEST_CASE("vertices and barycenter")
    {
        const WeightedSimplex s({0, 2, 5}, {1, 2, 4});
        CHECK(s.dimension() == 2);
        CHECK(s.vertex(1) == qv({0, frac(1, 2), 0}));
        CHECK(s.barycenter() == qv({frac(1, 3), frac(1, 6), frac(1, 12)}));
        CHECK(s.multiplicity_of(5) == 4);
        CHECK(s.contains_index(2));
        CHECK_FALSE(s.contains_index(1));
        CHECK(s.embed(s.vertex(2), 6) == qv({0, 0, 0, 0, 0, frac(1, 4)}));
        CHECK_THROWS_AS(WeightedSimplex({1, 0}, {1, 1}), std::invalid_argument);
        CHECK_THROWS_AS(WeightedSimplex({0, 1}, {1, 0}), std::invalid_argument);
    }

    TEST_CASE("uniform samples satisfy the constraints")
    {
        const WeightedSimplex s({0, 1, 2}, {1, 2, 3});
        const auto pts = sample_uniform(s, 4, 5000);
        for (const auto& p : pts) {
            double sum = 0.0;
            for (std::size_t i = 0; i < p.size(); ++i) {
                CHECK(p[i] >= 0.0);
                sum += s.multiplicities()[i] * p[i];
            }
            CHECK(std::abs(sum - 1.0) < 1e-12);
        }
    }

    TEST_CASE("uniform sample means")
    {
        for (std::size_t r : {2u, 3u}) {
            std::vector<std::size_t> idx(r);
            std::iota(idx.begin(), idx.end(), 0);
            const WeightedSimplex s(idx, std::vector<int>(r, 1));
            const auto pts = sample_uniform(s, 1, 100000);
            double mean = 0.0;
            for (const auto& p : pts) {
                mean += p[0];
            }
            mean /= static_cast<double>(pts.size());
            CHECK(std::abs(mean - oracle::simplex_mean(1, r)) < 0.01);
        }
    }

    TEST_CASE("sampling is reproducible and independent of threads")
    {
        const WeightedSimplex s({0, 1, 2, 3}, {1, 2, 1, 3});
        const auto a = sample_uniform(s, 99, 20000, 1);
        const auto b = sample_uniform(s, 99, 20000, 4);
        CHECK(a == b);
        CHECK(sample_uniform(s, 100, 10, 1) != sample_uniform(s, 99, 10, 1));
    }

    TEST_CASE("faces")
    {
        const WeightedSimplex s({0, 1, 2}, {1, 1, 1});
        CHECK(face(s, {1, 2}) == WeightedSimplex({1, 2}, {1, 1}));
        CHECK(face(s, {0, 1, 2}) == s);
        const auto v = face(s, {2});
        CHECK(v.dimension() == 0);
        CHECK(v.embed(v.vertex(0), 3) == qv({0, 0, 1}));
        CHECK_THROWS_AS(face(s, {}), std::invalid_argument);
        CHECK_THROWS_AS(face(s, {3}), std::invalid_argument);

        const WeightedSimplex t({0, 1, 2, 3}, {2, 1, 3, 1});
        CHECK(face(face(t, {0, 2, 3}), {0, 3}) == face(t, {0, 3}));
    }

    TEST_CASE("measure density")
    {
        WeightedSimplexMeasure m{WeightedSimplex({0, 1, 2}, {1, 1, 1}), 0.25};
        CHECK(m.density() == doctest::Approx(0.5));
    }
}
