#include "fnnseq/error.hpp"
#include "fnnseq/layers.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace fnnseq;

TEST_CASE("membership is one at the center and exp(-1) one width away")
{
    FuzzySet fs{{1.0, -2.0}, 0.5};
    CHECK(membership(fs, std::vector<double>{1.0, -2.0}) == 1.0);
    CHECK(membership(fs, std::vector<double>{1.5, -2.0}) == doctest::Approx(std::exp(-1.0)));
    CHECK(scaled_sq_distance(fs, std::vector<double>{1.0, -1.0}) == doctest::Approx(4.0));
    CHECK_THROWS_AS(membership(fs, std::vector<double>{1.0}), ContractError);
}

TEST_CASE("coverage")
{
    const std::vector<double> v{0.0};
    CHECK(coverage({}, v) == 0.0);

    std::vector<FuzzySet> sets{{{0.0}, 0.1}, {{5.0}, 0.1}};
    const double c = coverage(sets, v);
    CHECK(c >= 1.0);
    CHECK(c == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("best_match picks the nearest center even when memberships underflow")
{
    std::vector<FuzzySet> sets{{{0.0}, 0.1}, {{100.0}, 0.1}, {{40.0}, 0.1}};
    CHECK(best_match(sets, std::vector<double>{55.0}) == 2);
    CHECK(best_match(sets, std::vector<double>{-3.0}) == 0);
    CHECK_THROWS_AS(best_match({}, std::vector<double>{0.0}), ContractError);
}

TEST_CASE("discrimination layer accumulates elementwise powers, power-major")
{
    std::vector<double> o1(3 * 2, 0.0);
    accumulate_powers(o1, std::vector<double>{2.0, -1.0}, 3);
    accumulate_powers(o1, std::vector<double>{1.0, 3.0}, 3);
    CHECK(o1[0] == 3.0);   // 2 + 1
    CHECK(o1[1] == 2.0);   // -1 + 3
    CHECK(o1[2] == 5.0);   // 4 + 1
    CHECK(o1[3] == 10.0);  // 1 + 9
    CHECK(o1[4] == 9.0);   // 8 + 1
    CHECK(o1[5] == 26.0);  // -1 + 27
    CHECK_THROWS_AS(accumulate_powers(o1, std::vector<double>{1.0}, 3), ContractError);
}

TEST_CASE("sine over one full period: odd power sums vanish")
{
    const std::size_t P = 20;
    std::vector<double> o1(3, 0.0);
    for (std::size_t k = 0; k < P; ++k)
        accumulate_powers(o1, std::vector<double>{std::sin(2.0 * M_PI * static_cast<double>(k) / P)}, 3);
    CHECK(std::abs(o1[0]) < 1e-12);
    CHECK(o1[1] == doctest::Approx(P / 2.0));
    CHECK(std::abs(o1[2]) < 1e-12);
}

TEST_CASE("memory filters")
{
    CHECK(memory_lambda(1) == 0.5);
    CHECK(memory_lambda(3) == 0.75);

    std::vector<double> o3(3, 0.0);
    update_filters(o3, std::vector<double>{1.0});
    CHECK(o3[0] == 0.5);
    CHECK(o3[1] == doctest::Approx(1.0 / 3.0));
    CHECK(o3[2] == 0.25);

    std::vector<double> m{0.0, 0.0, 4.0};
    update_filters(m, std::vector<double>{0.0});
    CHECK(m[2] == 3.0);

    // Layout is neuron-major: o3[(i-1)*dim + k].
    std::vector<double> two(4, 0.0);
    update_filters(two, std::vector<double>{2.0, -4.0});
    CHECK(two[0] == 1.0);
    CHECK(two[1] == -2.0);
    CHECK(two[2] == doctest::Approx(2.0 / 3.0));
    CHECK(two[3] == doctest::Approx(-4.0 / 3.0));

    std::vector<double> bad(3, 0.0);
    CHECK_THROWS_AS(update_filters(bad, std::vector<double>{1.0, 2.0}), ContractError);
    CHECK_THROWS_AS(update_filters(o3, std::vector<double>{std::nan("")}), InputError);
}

TEST_CASE("a constant input is approached monotonically and never overshot")
{
    std::vector<double> o3(6, 0.0);
    double prev = 0.0;
    for (int t = 0; t < 200; ++t) {
        update_filters(o3, std::vector<double>{2.0});
        for (double v : o3)
            CHECK(v <= 2.0);
        CHECK(o3[5] >= prev);
        prev = o3[5];
    }
    CHECK(o3[0] == doctest::Approx(2.0));
}

TEST_CASE("normalize")
{
    const auto phi = normalize(std::vector<double>{1.0, 3.0});
    CHECK(phi[0] == 0.25);
    CHECK(phi[1] == 0.75);
    CHECK_THROWS_AS(normalize(std::vector<double>{0.0, 0.0}), DegenerateActivationError);
    CHECK_THROWS_AS(normalize(std::vector<double>{-1.0, 2.0}), ContractError);
}

TEST_CASE("log-domain normalization matches the direct form and survives underflow")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-20.0, 0.0);
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<double> lg(5), mu(5);
        for (std::size_t i = 0; i < 5; ++i) {
            lg[i] = u(rng);
            mu[i] = std::exp(lg[i]);
        }
        const auto a = normalize_log(lg);
        const auto b = normalize(mu);
        for (std::size_t i = 0; i < 5; ++i)
            CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
    }

    // exp(-2000) is 0 in double precision; the ratio exp(-1) is not.
    const auto phi = normalize_log(std::vector<double>{-2000.0, -2001.0});
    CHECK(phi[0] == doctest::Approx(1.0 / (1.0 + std::exp(-1.0))));
    CHECK(phi[0] + phi[1] == doctest::Approx(1.0));

    const double ninf = -std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(normalize_log(std::vector<double>{ninf, ninf}), DegenerateActivationError);
    CHECK_THROWS_AS(normalize_log(std::vector<double>{}), EmptyRulebaseError);
    CHECK(normalize_log(std::vector<double>{ninf, -5.0})[1] == 1.0);
}
