#include <doctest.h>

#include "memaccel/error.hpp"
#include "memaccel/polyroots.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <random>

using namespace memaccel;

namespace {

RealPolynomial random_poly(std::mt19937_64& rng, int degree) {
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    std::vector<double> c(static_cast<std::size_t>(degree) + 1);
    for (auto& v : c) v = u(rng);
    if (c.back() == 0.0) c.back() = 1.0;
    return RealPolynomial(c);
}

}  // namespace

TEST_CASE("polynomial construction trims trailing zeros") {
    RealPolynomial p{2.0, -3.0, 1.0, 0.0, 0.0};
    CHECK(p.degree() == 2);
    CHECK(p.leading() == 1.0);
    CHECK(RealPolynomial{0.0, 0.0}.is_zero());
    CHECK(RealPolynomial{}.degree() == 0);
}

TEST_CASE("eval") {
    CHECK(std::abs(eval(RealPolynomial{0.64, 0.0, 1.0}, Complex(0.0, 0.8))) < 1e-15);
    CHECK(eval(RealPolynomial{2.0, -3.0, 1.0}, Complex(1.0)) == Complex(0.0));
    CHECK(eval(RealPolynomial{1.0}, Complex(5.0, 2.0)) == Complex(1.0));
}

TEST_CASE("arithmetic") {
    RealPolynomial a{-1.0, 1.0};
    RealPolynomial b{-2.0, 1.0};
    CHECK(a * b == RealPolynomial{2.0, -3.0, 1.0});
    CHECK(a + b == RealPolynomial{-3.0, 2.0});
    CHECK((a - a).is_zero());
}

TEST_CASE("roots of simple polynomials") {
    SUBCASE("factored quadratic") {
        auto r = roots(RealPolynomial{2.0, -3.0, 1.0});
        REQUIRE(r.size() == 2);
        CHECK(r.roots[0].real() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(r.roots[1].real() == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(max_modulus(r) == doctest::Approx(2.0).epsilon(1e-14));
    }
    SUBCASE("pure imaginary pair") {
        auto r = roots(RealPolynomial{0.64, 0.0, 1.0});
        REQUIRE(r.size() == 2);
        CHECK(std::abs(r.roots[0] - Complex(0.0, -0.8)) < 1e-14);
        CHECK(std::abs(r.roots[1] - Complex(0.0, 0.8)) < 1e-14);
        CHECK(max_modulus(r) == doctest::Approx(0.8).epsilon(1e-14));
    }
    SUBCASE("zero root") {
        auto r = roots(RealPolynomial{0.0, 1.0});
        CHECK(max_modulus(r) == 0.0);
    }
    SUBCASE("exact double root is reported as repeated") {
        auto r = roots(RealPolynomial{1.0, -2.0, 1.0});
        CHECK(r.roots[0] == r.roots[1]);
        CHECK(std::abs(r.roots[0] - 1.0) < 1e-14);
    }
    SUBCASE("trailing zero coefficients give exact zero roots") {
        auto r = roots(RealPolynomial{0.0, 0.0, 1.0, -2.0, 1.0});
        REQUIRE(r.size() == 4);
        CHECK(std::count(r.roots.begin(), r.roots.end(), Complex(0.0)) == 2);
    }
}

TEST_CASE("root errors") {
    CHECK_THROWS_AS((void)roots(RealPolynomial{3.0}), Error);
    try {
        (void)roots(RealPolynomial{3.0});
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegreeZero);
    }
    try {
        (void)max_modulus(ComplexRootSet{});
        FAIL("expected EmptySet");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EmptySet);
    }
}

TEST_CASE("degree-6 random polynomial passes the residual oracle") {
    std::mt19937_64 rng(6);
    auto p = random_poly(rng, 6);
    auto r = roots(p);
    REQUIRE(r.size() == 6);
    for (const auto& z : r.roots) {
        const double scale = std::pow(std::max(1.0, std::abs(z)), 6.0);
        CHECK(std::abs(eval(p, z)) / scale <= 1e-9 * (1.0 + p.max_abs_coeff()));
    }
}

TEST_CASE("property: count, residual, conjugate symmetry over random polynomials") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> deg(1, 32);
    int checked = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const int d = deg(rng);
        auto p = random_poly(rng, d);
        auto r = roots(p);
        REQUIRE(static_cast<int>(r.size()) == d);
        const double limit = 1e-9 * (1.0 + p.max_abs_coeff());
        for (std::size_t i = 0; i < r.size(); ++i) {
            REQUIRE(r.residuals[i] <= limit);
            // Inside the unit disc the scaled residual is the raw |p(r)|.
            if (std::abs(r.roots[i]) <= 1.0) REQUIRE(std::abs(eval(p, r.roots[i])) <= limit);
        }

        // Conjugate pairing: every non-real root has a partner with opposite imaginary part.
        std::vector<Complex> upper, lower;
        for (const auto& z : r.roots) {
            if (z.imag() > 1e-9) upper.push_back(z);
            if (z.imag() < -1e-9) lower.push_back(std::conj(z));
        }
        REQUIRE(upper.size() == lower.size());
        auto key = [](const Complex& a, const Complex& b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); };
        std::sort(upper.begin(), upper.end(), key);
        std::sort(lower.begin(), lower.end(), key);
        for (std::size_t i = 0; i < upper.size(); ++i)
            REQUIRE(std::abs(upper[i] - lower[i]) <= 1e-9 * std::max(1.0, std::abs(upper[i])));
        ++checked;
    }
    CHECK(checked == 10000);
}

TEST_CASE("property: quadratics agree with the closed form") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int trial = 0; trial < 10000; ++trial) {
        const double a = u(rng), b = u(rng), c = u(rng);
        auto r = roots(RealPolynomial{c, b, a});
        auto [x, y] = oracle::quadratic_roots(a, b, c);
        const double scale = std::max({1.0, std::abs(x), std::abs(y)});
        REQUIRE(oracle::multiset_distance(r.roots, {x, y}) <= 1e-10 * scale);
    }
}
