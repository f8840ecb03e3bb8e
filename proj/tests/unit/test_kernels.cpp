#include "thp/error.hpp"
#include "thp/kernels.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace thp;

TEST_CASE("exponential kernel") {
    const DecayKernel k = ExponentialKernel{0.11};
    CHECK(evaluate(k, 0.0) == 0.0);
    CHECK(evaluate(k, -3.0) == 0.0);
    CHECK(evaluate(k, 10.0) == doctest::Approx(0.33287108369807955).epsilon(1e-14));
}

TEST_CASE("uniform kernel is an open-interval indicator") {
    const DecayKernel k = UniformKernel{10.0, 4.0};
    CHECK(evaluate(k, 12.0) == 0.25);
    CHECK(evaluate(k, 9.0) == 0.0);
    CHECK(evaluate(k, 10.0) == 0.0);
    CHECK(evaluate(k, 14.0) == 0.0);
}

TEST_CASE("gaussian kernel uses the full-density normalizer") {
    const DecayKernel k = GaussianKernel{10.0, 4.0};
    CHECK(evaluate(k, 10.0) == doctest::Approx(1.0 / (4.0 * std::sqrt(2.0 * std::numbers::pi))));
    CHECK(evaluate(k, 14.0) == doctest::Approx(std::exp(-0.5) / (4.0 * std::sqrt(2.0 * std::numbers::pi))));
    CHECK(evaluate(k, 0.0) == 0.0);
    CHECK(evaluate(GaussianKernel{-1.0, 4.0}, -1.0) == 0.0);
}

TEST_CASE("kernel values are non-negative and finite") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> t(-50.0, 200.0);
    const DecayKernel kernels[] = {ExponentialKernel{0.11}, ExponentialKernel{3.0}, GaussianKernel{10.0, 4.0},
                                   UniformKernel{5.0, 4.0}};
    for (int i = 0; i < 1000; ++i)
        for (const auto& k : kernels) {
            const double v = evaluate(k, t(rng));
            CHECK(v >= 0.0);
            CHECK(std::isfinite(v));
        }
}

TEST_CASE("semigroup property of the exponential") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> t(0.0, 30.0);
    for (int i = 0; i < 200; ++i) {
        const double a = t(rng);
        const double b = t(rng);
        CHECK(std::abs(std::exp(-0.11 * (a + b)) - std::exp(-0.11 * a) * std::exp(-0.11 * b)) < 1e-12);
    }
}

TEST_CASE("temporal summary step") {
    const DecayKernel k = ExponentialKernel{0.11};
    CHECK(temporal_summary_step(k, 0.0, 1.0, 1.0) == doctest::Approx(0.8958341352965282).epsilon(1e-14));
    double s = 0.0;
    for (int t = 0; t < 50; ++t) {
        s = temporal_summary_step(k, s, 0.0, 1.0);
        CHECK(s == 0.0);
    }
    CHECK_THROWS_AS(temporal_summary_step(GaussianKernel{}, 0.0, 1.0, 1.0), UnsupportedKernel);
}

TEST_CASE("recursion matches the brute-force double sum") {
    auto check = [](int bins, int events, std::uint64_t seed, double tolerance) {
        std::mt19937_64 rng(seed);
        std::vector<double> x(static_cast<std::size_t>(bins), 0.0);
        for (int i = 0; i < events; ++i) x[static_cast<std::size_t>(std::uniform_int_distribution<int>(0, bins - 1)(rng))] += 1.0;
        const double decay = 0.11;
        const double dt = 1.3;
        const DecayKernel k = ExponentialKernel{decay};
        double s = 0.0;
        double worst = 0.0;
        for (int t = 0; t < bins; ++t) {
            if (t > 0) s = temporal_summary_step(k, s, x[static_cast<std::size_t>(t - 1)], dt);
            // Truncated at lags where the kernel underflows relative to the sum.
            double brute = 0.0;
            for (int tp = std::max(0, t - 2000); tp < t; ++tp) brute += std::exp(-decay * (t - tp) * dt) * x[static_cast<std::size_t>(tp)];
            const double err = std::abs(s - brute) / std::max(1e-300, std::abs(brute));
            if (brute > 0) worst = std::max(worst, err);
            else CHECK(s == doctest::Approx(0.0));
        }
        CHECK(worst < tolerance);
    };
    check(50, 20, 1, 1e-10);
    check(10000, 300, 2, 1e-9);
}

TEST_CASE("kernel validation") {
    CHECK_THROWS_AS(validate(ExponentialKernel{0.0}), InvalidInput);
    CHECK_THROWS_AS(validate(GaussianKernel{1.0, -1.0}), InvalidInput);
    CHECK_THROWS_AS(validate(UniformKernel{1.0, 0.0}), InvalidInput);
    CHECK_NOTHROW(validate(ExponentialKernel{0.11}));
    CHECK(support_end(UniformKernel{10.0, 4.0}) == 14.0);
}
