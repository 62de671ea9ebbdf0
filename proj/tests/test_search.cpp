#include <doctest.h>

#include "memaccel/accel.hpp"
#include "memaccel/error.hpp"

using namespace memaccel;

TEST_CASE("search improves the worked example with three extra memory slots") {
    const auto s = SpectralSet::parse("0.0122:0.0182,0.9878");
    SearchOptions opts;
    auto r = search_gains(s, 4, std::nullopt, opts);
    CHECK(r.seed_report.nu == doctest::Approx(0.8).epsilon(1e-4));
    CHECK(r.improved);
    CHECK(r.report.nu <= 0.757);
    CHECK(r.gains.memory_order() == 4);
    CHECK(r.evaluations <= opts.budget);
}

TEST_CASE("search cannot improve the single-memory optimum on a full interval") {
    const auto s = SpectralSet::interval(0.0122, 0.9878);
    SearchOptions opts;
    opts.budget = 400;
    auto r = search_gains(s, 2, std::nullopt, opts);
    CHECK(std::abs(r.report.nu - 0.8000) <= 1e-4);
    CHECK(r.report.nu <= r.seed_report.nu);
}

TEST_CASE("exact eigenvalue knowledge allows deadbeat tuning") {
    auto r = search_gains(SpectralSet({}, {1.0}), 2);
    CHECK(r.report.nu <= 1e-12);
}

TEST_CASE("search is deterministic and never worse than its seed") {
    const auto s = SpectralSet::parse("0.05:0.1,0.6:0.7");
    SearchOptions opts;
    opts.budget = 300;
    opts.rng_seed = 42;
    const auto seed = Gains::make(2.0, {-0.2, 0.0});
    auto a = search_gains(s, 3, seed, opts);
    auto b = search_gains(s, 3, seed, opts);
    CHECK(a.gains == b.gains);
    CHECK(a.report.nu == b.report.nu);
    CHECK(a.report.nu <= a.seed_report.nu);
}

TEST_CASE("search argument validation") {
    const auto s = SpectralSet::interval(0.1, 1.0);
    SearchOptions bad;
    bad.budget = 0;
    CHECK_THROWS_AS((void)search_gains(s, 2, std::nullopt, bad), Error);
    CHECK_THROWS_AS((void)search_gains(s, 3, Gains::make(1.0, {0.1}), {}), Error);
}
