#pragma once

// Independent reference computations used only by the tests. None of these
// call into the library paths they are used to check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

/// Roots of a x^2 + b x + c with the cancellation-free formula.
inline std::pair<Complex, Complex> quadratic_roots(double a, double b, double c) {
    const double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
        const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
        if (q == 0.0) return {Complex(0.0), Complex(0.0)};
        return {Complex(q / a), Complex(c / q)};
    }
    const double re = -b / (2.0 * a);
    const double im = std::sqrt(-disc) / (2.0 * std::abs(a));
    return {Complex(re, -im), Complex(re, im)};
}

/// Characteristic polynomial det(zI - A) by Faddeev-LeVerrier; returns
/// coefficients lowest degree first, monic.
inline std::vector<double> charpoly(const std::vector<std::vector<double>>& a) {
    const std::size_t n = a.size();
    std::vector<double> c(n + 1, 0.0);
    c[n] = 1.0;
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (std::size_t k = 1; k <= n; ++k) {
        // m <- A m + c_{n-k+1} I
        std::vector<std::vector<double>> am(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double s = 0.0;
                for (std::size_t l = 0; l < n; ++l) s += a[i][l] * m[l][j];
                am[i][j] = s;
            }
        for (std::size_t i = 0; i < n; ++i) am[i][i] += c[n - k + 1];
        m = am;
        double trace = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) trace += a[i][l] * m[l][i];
        c[n - k] = -trace / static_cast<double>(k);
    }
    return c;
}

/// Smallest achievable max pairwise distance between two multisets, by brute
/// force over permutations for small sizes.
inline double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    std::vector<std::size_t> perm(b.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    double best = std::numeric_limits<double>::infinity();
    do {
        double worst = 0.0;
        for (std::size_t i = 0; i < a.size() && worst < best; ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

/// Multiply out prod (z - r_i), lowest degree first.
inline std::vector<Complex> poly_from_roots(const std::vector<Complex>& r) {
    std::vector<Complex> c{1.0};
    for (const auto& root : r) {
        std::vector<Complex> next(c.size() + 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= root * c[i];
        }
        c = next;
    }
    return c;
}

}  // namespace oracle
