#include "oracles.hpp"
#include "test_util.hpp"

#include "tropdeg/sncmodel.hpp"

#include <doctest.h>

#include <random>

using namespace tropdeg;

namespace {

// n+2 components, every proper subset is a stratum
SncCombinatorics fermat(std::size_t n)
{
    std::vector<SncComponent> comps;
    for (std::size_t i = 0; i < n + 2; ++i) {
        comps.push_back({"E" + std::to_string(i), 1, Rational(0)});
    }
    std::vector<Stratum> strata;
    for (std::size_t k = 2; k <= n + 1; ++k) {
        for_each_subset(n + 2, k, [&](const std::vector<std::size_t>& s) { strata.push_back(s); });
    }
    return SncCombinatorics(comps, strata);
}

SncCombinatorics triangle(std::vector<Rational> a, std::map<Stratum, double> masses = {})
{
    std::vector<SncComponent> comps;
    for (std::size_t i = 0; i < a.size(); ++i) {
        comps.push_back({"E" + std::to_string(i), 1, a[i]});
    }
    return SncCombinatorics(comps, {{0, 1}, {0, 2}, {1, 2}}, std::move(masses));
}

} // namespace

TEST_SUITE("sncmodel")
{
    TEST_CASE("Fermat dual complexes are simplex boundaries")
    {
        for (std::size_t n : {1u, 2u, 3u}) {
            const auto m = fermat(n);
            const auto c = dual_complex(m);
            std::vector<std::size_t> expected;
            for (std::size_t k = 0; k <= n; ++k) {
                expected.push_back(oracle::choose(n + 2, k + 1));
            }
            CHECK(c.f_vector() == expected);
            CHECK(kappa(m).kappa == 0);
            const auto e = essential_complex(m);
            CHECK(e.faces == m.strata());
            CHECK(e.dimension == static_cast<int>(n));
        }
    }

    TEST_CASE("single component is a point")
    {
        SncCombinatorics m({{"E", 1, Rational(0)}}, {});
        CHECK(dual_complex(m).f_vector() == std::vector<std::size_t>{1});
    }

    TEST_CASE("dual complex vertices sit at e_i / b_i")
    {
        SncCombinatorics m({{"A", 2, Rational(0)}, {"B", 3, Rational(0)}}, {{0, 1}});
        const auto c = dual_complex(m);
        REQUIRE(c.f_vector() == std::vector<std::size_t>{2, 1});
        CHECK(c.cells[0].generators.vertices[0] == qv({frac(1, 2), 0}));
        CHECK(c.cells[1].generators.vertices[0] == qv({0, frac(1, 3)}));
        // every face of the edge is recorded as incident
        CHECK(c.incidences.size() == 2);
    }

    TEST_CASE("validation")
    {
        std::vector<SncComponent> comps{{"E0", 1, 0}, {"E1", 1, 0}, {"E2", 1, 0}};
        try {
            SncCombinatorics(comps, {{0, 1, 2}, {0, 1}, {0, 2}});
            FAIL("non-closed family accepted");
        } catch (const SncValidationError& e) {
            CHECK(std::string(e.what()).find("{E1,E2}") != std::string::npos);
        }
        CHECK_THROWS_AS(SncCombinatorics({{"E0", 0, 0}}, {}), SncValidationError);
        CHECK_THROWS_AS(SncCombinatorics({{"E0", 1, 0}, {"E0", 1, 0}}, {}), SncValidationError);
        CHECK_THROWS_AS(SncCombinatorics({}, {}), SncValidationError);
        // masses must sit on top essential faces
        CHECK_THROWS_AS(triangle({0, 0, 0}, {{{0}, 1.0}}), std::invalid_argument);
        CHECK_THROWS_AS(triangle({0, 0, 0}, {{{0, 1}, -1.0}}), std::invalid_argument);
    }

    TEST_CASE("kappa and normalization")
    {
        SncCombinatorics m({{"A", 1, 0}, {"B", 1, 1}}, {{0, 1}});
        CHECK(kappa(m).kappa == 0);
        CHECK(kappa(m).per_component == std::vector<Rational>{0, 1});

        SncCombinatorics m2({{"A", 1, 2}, {"B", 2, 3}}, {{0, 1}});
        CHECK(kappa(m2).kappa == frac(3, 2));
        CHECK(kappa(m2).per_component == std::vector<Rational>{2, frac(3, 2)});
        const auto n2 = normalize_kappa(m2);
        CHECK(n2.components()[0].a == frac(1, 2));
        CHECK(n2.components()[1].a == 0);
        CHECK(kappa(n2).kappa == 0);

        SncCombinatorics m3({{"A", 1, 5}}, {});
        CHECK(normalize_kappa(m3).components()[0].a == 0);
    }

    TEST_CASE("normalization is idempotent and matches the direct filter")
    {
        std::mt19937_64 rng(17);
        std::uniform_int_distribution<int> num(-6, 6);
        std::uniform_int_distribution<int> mult(1, 3);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<SncComponent> comps;
            for (int i = 0; i < 4; ++i) {
                comps.push_back({"E" + std::to_string(i), mult(rng), frac(num(rng), mult(rng))});
            }
            std::vector<Stratum> strata;
            for_each_subset(4, 3, [&](const std::vector<std::size_t>& s) {
                if (rng() % 2) {
                    strata.push_back(s);
                    for_each_subset(3, 2, [&](const std::vector<std::size_t>& p) {
                        strata.push_back({s[p[0]], s[p[1]]});
                    });
                }
            });
            const SncCombinatorics m(comps, strata);
            const auto n1 = normalize_kappa(m);
            const auto n2 = normalize_kappa(n1);
            for (std::size_t i = 0; i < 4; ++i) {
                CHECK(n1.components()[i].a == n2.components()[i].a);
                CHECK(n1.components()[i].a >= 0);
            }
            const auto e = essential_complex(m);
            std::vector<Stratum> direct;
            for (const auto& s : n1.strata()) {
                bool all_zero = true;
                for (auto i : s) {
                    all_zero = all_zero && n1.components()[i].a == 0;
                }
                if (all_zero) {
                    direct.push_back(s);
                }
            }
            CHECK(e.faces == direct);
            // subcomplex: closed under nonempty subsets
            for (const auto& f : e.faces) {
                for_each_subset(f.size(), f.size() - 1, [&](const std::vector<std::size_t>& pick) {
                    if (pick.empty()) {
                        return;
                    }
                    Stratum sub;
                    for (auto k : pick) {
                        sub.push_back(f[k]);
                    }
                    CHECK(std::find(e.faces.begin(), e.faces.end(), sub) != e.faces.end());
                });
            }
        }
    }

    TEST_CASE("essential complex examples")
    {
        auto e = essential_complex(triangle({0, 1, 1}));
        CHECK(e.faces == std::vector<Stratum>{{0}});
        CHECK(e.dimension == 0);

        e = essential_complex(triangle({0, 0, 1}));
        CHECK(e.faces == std::vector<Stratum>{{0}, {1}, {0, 1}});
        CHECK(e.dimension == 1);
        CHECK(e.top_faces == std::vector<Stratum>{{0, 1}});

        e = essential_complex(fermat(1));
        CHECK(e.dimension == 1);
        CHECK(e.top_faces.size() == 3);
    }

    TEST_CASE("log map is the identity on faces")
    {
        const auto m = fermat(2);
        for (const auto& s : m.strata()) {
            const auto simplex = m.simplex(s);
            const auto bary = simplex.embed(simplex.barycenter(), m.size());
            CHECK(log_of_monomial(m, bary) == bary);
            for (std::size_t k = 0; k < simplex.size(); ++k) {
                const auto v = simplex.embed(simplex.vertex(k), m.size());
                CHECK(log_of_monomial(m, v) == v);
            }
            for (const auto& p : sample_uniform(simplex, 3, 20)) {
                RealVector w(m.size(), 0.0);
                for (std::size_t k = 0; k < s.size(); ++k) {
                    w[s[k]] = p[k];
                }
                CHECK(log_of_monomial(m, w) == w);
            }
        }
        // the interior of the missing 3-simplex is not in the complex
        CHECK_THROWS_AS(log_of_monomial(m, qv({frac(1, 4), frac(1, 4), frac(1, 4), frac(1, 4)})),
                        std::invalid_argument);
        CHECK_THROWS_AS(log_of_monomial(m, qv({1, 1, 0, 0})), std::invalid_argument);
    }

    TEST_CASE("limit measures")
    {
        auto mus = limit_measure(fermat(1), true);
        REQUIRE(mus.size() == 3);
        for (const auto& mu : mus) {
            CHECK(mu.mass == doctest::Approx(1.0 / 3.0));
            CHECK(mu.simplex.dimension() == 1);
        }

        // single essential vertex: a Dirac mass
        mus = limit_measure(triangle({0, 1, 1}), true);
        REQUIRE(mus.size() == 1);
        CHECK(mus[0].mass == 1.0);
        CHECK(mus[0].simplex.dimension() == 0);

        mus = limit_measure(triangle({0, 0, 0}, {{{0, 1}, 1.0}, {{0, 2}, 3.0}, {{1, 2}, 4.0}}));
        double total = 0.0;
        for (const auto& mu : mus) {
            total += mu.mass;
        }
        CHECK(std::abs(total - 1.0) < 1e-12);
        CHECK(mus[0].mass == doctest::Approx(1.0 / 8.0));

        SncCombinatorics two({{"A", 1, 0}, {"B", 1, 0}, {"C", 1, 0}}, {{0, 1}, {1, 2}}, {{{0, 1}, 1.0}, {{1, 2}, 3.0}});
        mus = limit_measure(two);
        REQUIRE(mus.size() == 2);
        CHECK(mus[0].mass == doctest::Approx(0.25));
        CHECK(mus[1].mass == doctest::Approx(0.75));

        try {
            limit_measure(fermat(1));
            FAIL("missing masses accepted");
        } catch (const MissingMassError& e) {
            CHECK(std::string(e.what()).find("E0,E1") != std::string::npos);
        }
    }
}
