#include <doctest.h>

#include "memaccel/accel.hpp"
#include "memaccel/error.hpp"
#include "generators.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace memaccel;

namespace {

const SpectralInterval kExample = SpectralInterval::make(0.0122, 0.9878);

using testgen::random_interval;

}  // namespace

TEST_CASE("gains validation") {
    CHECK(Gains::make(2.0).memory_order() == 1);
    CHECK(Gains::make(2.0, {-0.5, 0.1}).memory_order() == 3);
    CHECK(Gains::make(2.0, {-0.5, 0.1}).beta(2) == 0.1);
    try {
        (void)Gains::make(0.0, {-0.5});
        FAIL("alpha = 0 accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::AlphaZero);
    }
    CHECK_NOTHROW((void)Gains::make(-1.0));
}

TEST_CASE("characteristic polynomial") {
    SUBCASE("memory gain cancels the linear term") {
        auto p = char_poly(Gains::make(3.28, {-0.64}), 0.5);
        REQUIRE(p.degree() == 2);
        CHECK(p[2] == 1.0);
        CHECK(std::abs(p[1]) < 1e-15);
        CHECK(p[0] == doctest::Approx(0.64).epsilon(1e-15));
    }
    SUBCASE("memoryless mode") {
        auto p = char_poly(Gains::make(1.5), 0.4);
        CHECK(p == RealPolynomial{-(1.0 - 1.5 * 0.4), 1.0});
    }
    SUBCASE("beta_1 = 0 adds a zero root") {
        auto r = mode_roots(Gains::make(1.5, {0.0}), 0.4);
        REQUIRE(r.size() == 2);
        CHECK(r.roots[0] == Complex(0.0));
        CHECK(r.roots[1].real() == doctest::Approx(1.0 - 1.5 * 0.4).epsilon(1e-15));
    }
    SUBCASE("matches the scalar recursion coefficients") {
        // x(t+1) = (1 - a l - sum b) x(t) + sum_m b_m x(t-m)
        auto g = Gains::make(0.7, {-0.3, 0.2, 0.05});
        auto p = char_poly(g, 1.3);
        CHECK(p[3] == doctest::Approx(-(1.0 - 0.7 * 1.3 - (-0.3 + 0.2 + 0.05))));
        CHECK(p[2] == doctest::Approx(0.3));
        CHECK(p[1] == doctest::Approx(-0.2));
        CHECK(p[0] == doctest::Approx(-0.05));
    }
}

TEST_CASE("mode roots under the single-memory tuning") {
    const auto t = tune_single_memory(kExample);
    SUBCASE("interval midpoint gives a purely imaginary pair") {
        auto r = mode_roots(t.gains, 0.5);
        auto [a, b] = oracle::quadratic_roots(1.0, 0.0, t.nu_star * t.nu_star);
        CHECK(oracle::multiset_distance(r.roots, {a, b}) < 1e-12);
        CHECK(max_modulus(r) == doctest::Approx(0.8).epsilon(1e-4));
    }
    SUBCASE("lower endpoint gives a double root at +nu") {
        auto r = mode_roots(t.gains, kExample.lo);
        CHECK(std::abs(r.roots[0] - t.nu_star) < 1e-12);
        CHECK(std::abs(r.roots[1] - t.nu_star) < 1e-12);
    }
    SUBCASE("memoryless tuning at the top eigenvalue") {
        auto r = mode_roots(Gains::make(2.0), 0.9878);
        REQUIRE(r.size() == 1);
        CHECK(r.roots[0].real() == doctest::Approx(-0.9756).epsilon(1e-12));
    }
}

TEST_CASE("closed-form tunings") {
    auto m = tune_memoryless(kExample);
    CHECK(m.alpha == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(m.mu == doctest::Approx(0.9756).epsilon(1e-12));
    auto deadbeat = tune_memoryless(SpectralInterval::make(1.0, 1.0));
    CHECK(deadbeat.alpha == 1.0);
    CHECK(deadbeat.mu == 0.0);
    auto direct = tune_memoryless(SpectralInterval::make(1.0, 3.0));
    CHECK(direct.alpha == 0.5);
    CHECK(direct.mu == 0.5);

    auto t = tune_single_memory(kExample);
    CHECK(std::abs(t.alpha_star - 3.2800) <= 1e-3);
    CHECK(std::abs(t.beta1_star + 0.6400) <= 1e-3);
    CHECK(std::abs(t.nu_star - 0.8000) <= 1e-4);
    CHECK(t.nu_star == doctest::Approx(std::sqrt(-t.beta1_star)).epsilon(1e-12));
    CHECK(t.nu_star == doctest::Approx(1.0 / 0.9756 - std::sqrt(1.0 / (0.9756 * 0.9756) - 1.0)).epsilon(1e-12));
    CHECK_FALSE(t.degenerate);
    CHECK(t.gains.memory_order() == 2);

    auto padded = tune_single_memory(kExample, 5);
    REQUIRE(padded.gains.memory_order() == 5);
    CHECK(padded.gains.beta(1) == t.beta1_star);
    for (int m = 2; m < 5; ++m) CHECK(padded.gains.beta(m) == 0.0);

    auto degenerate = tune_single_memory(SpectralInterval::make(1.0, 1.0));
    CHECK(degenerate.degenerate);
    CHECK(degenerate.gains.alpha() == 1.0);
    CHECK(degenerate.beta1_star == 0.0);
    CHECK(degenerate.nu_star == 0.0);

    CHECK_THROWS_AS((void)tune_single_memory(kExample, 1), Error);
}

TEST_CASE("guarantee evaluator reproduces the worked example") {
    auto t = tune_single_memory(kExample);
    auto r = guarantee(t.gains, SpectralSet::interval(kExample.lo, kExample.hi));
    CHECK(std::abs(r.nu - 0.8000) <= 1e-4);
    CHECK(r.samples.front().lambda == kExample.lo);
    CHECK(r.samples.back().lambda == kExample.hi);

    auto memoryless = guarantee(Gains::make(2.0), SpectralSet::interval(kExample.lo, kExample.hi));
    CHECK(std::abs(memoryless.nu - 0.9756) <= 1e-6);

    auto four = Gains::make(3.6908, {-0.9083, 0.006662, 0.06785});
    auto improved = guarantee(four, SpectralSet::parse("0.0122:0.0182,0.9878"));
    CHECK(std::abs(improved.nu - 0.7560) <= 5e-4);
}

TEST_CASE("guarantee report invariants") {
    auto g = Gains::make(3.6908, {-0.9083, 0.006662, 0.06785});
    auto s = SpectralSet::parse("0.0122:0.0182,0.3:0.4,0.9878");
    auto r = guarantee(g, s, {301, 1e-10});
    double top = 0.0;
    for (const auto& smp : r.samples) top = std::max(top, smp.modulus);
    CHECK(r.nu == top);
    bool found = false;
    for (const auto& smp : r.samples)
        if (smp.lambda == r.worst_lambda) {
            CHECK(smp.modulus == r.nu);
            found = true;
        }
    CHECK(found);
    for (double v : {0.0122, 0.0182, 0.3, 0.4, 0.9878}) {
        const bool covered =
            std::any_of(r.samples.begin(), r.samples.end(), [&](const auto& smp) { return smp.lambda == v; });
        CHECK(covered);
    }
    CHECK(std::is_sorted(r.samples.begin(), r.samples.end(),
                         [](const auto& a, const auto& b) { return a.lambda < b.lambda; }));
    CHECK_THROWS_AS((void)guarantee(g, SpectralSet{}), Error);
    CHECK_THROWS_AS((void)guarantee(g, s, {1, 0.0}), Error);
}

TEST_CASE("refinement finds a peak between grid samples") {
    auto g = Gains::make(3.6908, {-0.9083, 0.006662, 0.06785});
    auto s = SpectralSet::interval(kExample.lo, kExample.hi);
    auto coarse = guarantee(g, s, {9, 0.0});
    auto refined = guarantee(g, s, {9, 1e-10});
    auto fine = guarantee(g, s, {20001, 0.0});
    CHECK(refined.refined);
    CHECK(refined.nu >= coarse.nu);
    CHECK(refined.nu >= fine.nu - 1e-9);
}

TEST_CASE("guarantee on a single point is the root modulus there") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        auto g = Gains::make(1.0 + u(rng) * 0.5, {u(rng), u(rng)});
        const double lambda = 0.1 + std::abs(u(rng));
        auto r = guarantee(g, SpectralSet({}, {lambda}));
        REQUIRE(r.nu == max_modulus(mode_roots(g, lambda)));
        REQUIRE(r.worst_lambda == lambda);
    }
}

TEST_CASE("modal angle") {
    CHECK(modal_angle(kExample.lo, kExample) == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
    CHECK(modal_angle(kExample.hi, kExample) == doctest::Approx(std::numbers::pi).epsilon(1e-6));
    CHECK(modal_angle(0.5, kExample) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
    try {
        (void)modal_angle(0.01, kExample);
        FAIL("expected OutOfInterval");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::OutOfInterval);
    }
}

TEST_CASE("property: constant modulus and monotone angle under the single-memory tuning") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const auto iv = random_interval(rng);
        const auto t = tune_single_memory(iv);
        double previous = -1.0;
        for (int k = 0; k < 50; ++k) {
            const double lambda = k == 49 ? iv.hi : iv.lo + (iv.hi - iv.lo) * k / 49.0;
            REQUIRE(std::abs(max_modulus(mode_roots(t.gains, lambda)) - t.nu_star) <= 1e-8);
            const double theta = modal_angle(lambda, iv);
            REQUIRE(theta >= previous);
            previous = theta;
        }
        REQUIRE(modal_angle(iv.lo, iv) <= 1e-6);
        REQUIRE(std::abs(modal_angle(iv.hi, iv) - std::numbers::pi) <= 1e-6);
    }
}

TEST_CASE("property: no gain choice beats the single-memory rate (sampled)") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> order(2, 6);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> beta(-2.0, 2.0);
    for (int trial = 0; trial < 500; ++trial) {
        const auto iv = random_interval(rng);
        const int m = order(rng);
        double alpha = 0.0;
        while (alpha == 0.0) alpha = unit(rng) * 4.0 / iv.hi;
        std::vector<double> betas(static_cast<std::size_t>(m - 1));
        for (auto& b : betas) b = beta(rng);
        const auto r = guarantee(Gains::make(alpha, betas), SpectralSet::interval(iv.lo, iv.hi));
        REQUIRE(r.nu >= single_memory_rate(tune_memoryless(iv).mu) - 1e-9);
    }
}

TEST_CASE("property: nonnegative memory gains never beat memoryless") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> order(1, 6);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const auto iv = random_interval(rng);
        const int m = order(rng);
        double alpha = 0.0;
        while (alpha == 0.0) alpha = unit(rng) * 4.0 / iv.hi;
        std::vector<double> betas(static_cast<std::size_t>(m - 1));
        for (auto& b : betas) b = 2.0 * unit(rng);
        const auto r = guarantee(Gains::make(alpha, betas), SpectralSet::interval(iv.lo, iv.hi));
        REQUIRE(r.nu >= tune_memoryless(iv).mu - 1e-9);
    }
}

TEST_CASE("single-memory rate identities") {
    for (int k = 1; k <= 1000; ++k) {
        const double mu = k / 1001.0;
        const double nu = single_memory_rate(mu);
        const double beta1 = -nu * nu;
        REQUIRE(std::abs(nu * nu + beta1) == 0.0);
        REQUIRE(nu > mu / 2.0);
        REQUIRE(nu < mu);
        const double eps = 1.0 - mu;
        REQUIRE(nu < 1.0 - std::sqrt(eps));
    }
}
