#include "memaccel/polyroots.hpp"

#include "memaccel/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>

namespace memaccel {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// sum |c_i| |z|^i, the scale of the rounding error committed by Horner at z.
double abs_horner(std::span<const double> c, double r) noexcept {
    double acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * r + std::abs(c[i]);
    return acc;
}

double scaled_residual(std::span<const double> c, Complex z) noexcept {
    Complex v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * z + c[i];
    const double d = static_cast<double>(c.size() - 1);
    const double s = std::max(1.0, std::abs(z));
    return std::abs(v) / std::pow(s, d);
}

double rounding_level(std::span<const double> c, Complex z) noexcept {
    const double d = static_cast<double>(c.size() - 1);
    const double s = std::max(1.0, std::abs(z));
    return 2.0 * (d + 1.0) * kEps * abs_horner(c, std::abs(z)) / std::pow(s, d);
}

std::vector<Complex> circle_start(std::span<const double> monic) {
    const std::size_t d = monic.size() - 1;
    double bound = 0.0;
    for (std::size_t i = 0; i < d; ++i) bound = std::max(bound, std::abs(monic[i]));
    const double radius = 1.0 + bound;
    std::vector<Complex> z(d);
    // The offset keeps the start off the real axis so conjugate pairs can separate.
    constexpr double offset = 0.4;
    for (std::size_t k = 0; k < d; ++k) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d) + offset;
        z[k] = std::polar(radius, angle);
    }
    return z;
}

bool usable_guesses(std::span<const Complex> g, std::size_t d) {
    if (g.size() != d) return false;
    for (const auto& v : g)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            if (std::abs(g[i] - g[j]) <= 1e-12 * std::max(1.0, std::abs(g[i]))) return false;
    return true;
}

void aberth(std::span<const double> monic, std::vector<Complex>& z, int max_iterations) {
    const std::size_t d = z.size();
    std::vector<char> done(d, 0);
    for (int iter = 0; iter < max_iterations; ++iter) {
        bool all_done = true;
        for (std::size_t i = 0; i < d; ++i) {
            if (done[i]) continue;
            Complex value, deriv;
            eval_with_derivative(monic, z[i], value, deriv);
            if (std::abs(value) <= 2.0 * static_cast<double>(d + 1) * kEps * abs_horner(monic, std::abs(z[i]))) {
                done[i] = 1;
                continue;
            }
            all_done = false;
            const Complex newton = value / deriv;
            Complex repel = 0.0;
            for (std::size_t j = 0; j < d; ++j)
                if (j != i) repel += 1.0 / (z[i] - z[j]);
            const Complex step = newton / (1.0 - newton * repel);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
            z[i] -= step;
            if (std::abs(step) <= kEps * std::abs(z[i])) done[i] = 1;
        }
        if (all_done) return;
    }
}

std::vector<double> derivative(std::span<const double> c, std::size_t times) {
    std::vector<double> d(c.begin(), c.end());
    for (std::size_t t = 0; t < times && d.size() > 1; ++t) {
        for (std::size_t i = 1; i < d.size(); ++i) d[i - 1] = d[i] * static_cast<double>(i);
        d.pop_back();
    }
    return d;
}

// Numerically coincident roots come back from the iteration scattered over the
// pseudo-zero disc (radius ~eps^(1/m)). An m-fold root is a simple root of the
// (m-1)-th derivative, so Newton on that derivative from the cluster mean
// recovers it to working precision.
void merge_clusters(std::span<const double> c, std::vector<Complex>& z, double radius) {
    const std::size_t d = z.size();
    std::vector<std::size_t> parent(d);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            if (std::abs(z[i] - z[j]) <= radius * std::max(1.0, std::abs(z[i]))) parent[find(i)] = find(j);

    std::vector<std::vector<std::size_t>> groups(d);
    for (std::size_t i = 0; i < d; ++i) groups[find(i)].push_back(i);
    for (const auto& members : groups) {
        if (members.size() < 2) continue;
        Complex centre = 0.0;
        double worst = 0.0;
        for (auto i : members) {
            centre += z[i];
            worst = std::max(worst, scaled_residual(c, z[i]));
        }
        centre /= static_cast<double>(members.size());

        const auto dc = derivative(c, members.size() - 1);
        Complex polished = centre;
        for (int it = 0; it < 20; ++it) {
            Complex value, deriv;
            eval_with_derivative(dc, polished, value, deriv);
            if (deriv == 0.0) break;
            const Complex step = value / deriv;
            polished -= step;
            if (std::abs(step) <= kEps * std::max(1.0, std::abs(polished))) break;
        }
        if (std::abs(polished - centre) > radius * std::max(1.0, std::abs(centre))) polished = centre;
        if (scaled_residual(c, polished) <= 8.0 * (worst + rounding_level(c, polished)))
            for (auto i : members) z[i] = polished;
    }
}

ComplexRootSet solve(const RealPolynomial& p, std::span<const Complex> guesses, const RootOptions& opts) {
    if (p.degree() < 1) throw Error(ErrorKind::DegreeZero, "root finding needs degree >= 1");

    const auto c = p.coeffs();
    std::size_t zeros = 0;
    while (c[zeros] == 0.0) ++zeros;

    std::vector<double> monic(c.begin() + static_cast<std::ptrdiff_t>(zeros), c.end());
    const double lead = monic.back();
    for (auto& v : monic) v /= lead;
    const std::size_t d = monic.size() - 1;

    const double limit = opts.residual_tol * (1.0 + p.max_abs_coeff());
    auto attempt = [&](std::vector<Complex> z, bool last) -> std::optional<ComplexRootSet> {
        if (d > 1) {
            aberth(monic, z, opts.max_iterations);
            merge_clusters(monic, z, opts.cluster_radius);
        }
        z.insert(z.end(), zeros, Complex(0.0, 0.0));
        std::sort(z.begin(), z.end(), [](const Complex& a, const Complex& b) {
            return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
        });

        ComplexRootSet out;
        out.roots = std::move(z);
        out.residuals.reserve(out.roots.size());
        for (const auto& r : out.roots) {
            const double res = scaled_residual(c, r);
            if (!(res <= limit)) {
                if (!last) return std::nullopt;
                throw Error(ErrorKind::NoConvergence,
                            "residual " + std::to_string(res) + " exceeds " + std::to_string(limit));
            }
            out.residuals.push_back(res);
        }
        return out;
    };

    if (d == 1) return *attempt({Complex(-monic[0], 0.0)}, true);
    if (d > 1 && zeros == 0 && usable_guesses(guesses, d)) {
        // Real starting points stay real under real arithmetic; a small rotation
        // lets a pair that has left the axis separate.
        std::vector<Complex> z(guesses.begin(), guesses.end());
        for (auto& v : z) v *= std::polar(1.0, 1e-3);
        if (auto out = attempt(std::move(z), false)) return *out;
    }
    return *attempt(d > 1 ? circle_start(monic) : std::vector<Complex>{}, true);
}

}  // namespace

RealPolynomial::RealPolynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(0.0);
}

double RealPolynomial::max_abs_coeff() const noexcept {
    double m = 0.0;
    for (double v : coeffs_) m = std::max(m, std::abs(v));
    return m;
}

Complex RealPolynomial::operator()(Complex z) const noexcept { return eval(*this, z); }

RealPolynomial operator+(const RealPolynomial& a, const RealPolynomial& b) {
    std::vector<double> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
    return RealPolynomial(std::move(out));
}

RealPolynomial operator-(const RealPolynomial& a, const RealPolynomial& b) { return a + (-1.0) * b; }

RealPolynomial operator*(const RealPolynomial& a, const RealPolynomial& b) {
    std::vector<double> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return RealPolynomial(std::move(out));
}

RealPolynomial operator*(double s, const RealPolynomial& p) {
    std::vector<double> out(p.coeffs_);
    for (auto& v : out) v *= s;
    return RealPolynomial(std::move(out));
}

Complex eval(const RealPolynomial& p, Complex z) noexcept {
    const auto c = p.coeffs();
    Complex acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
    return acc;
}

void eval_with_derivative(std::span<const double> coeffs, Complex z, Complex& value, Complex& derivative) noexcept {
    value = 0.0;
    derivative = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        derivative = derivative * z + value;
        value = value * z + coeffs[i];
    }
}

double cauchy_bound(const RealPolynomial& p) {
    if (p.degree() < 1) throw Error(ErrorKind::DegreeZero, "Cauchy bound needs degree >= 1");
    const auto c = p.coeffs();
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) m = std::max(m, std::abs(c[i] / c.back()));
    return 1.0 + m;
}

ComplexRootSet roots(const RealPolynomial& p, const RootOptions& opts) { return solve(p, {}, opts); }

ComplexRootSet roots(const RealPolynomial& p, std::span<const Complex> initial_guesses, const RootOptions& opts) {
    return solve(p, initial_guesses, opts);
}

double max_modulus(const ComplexRootSet& r) {
    if (r.empty()) throw Error(ErrorKind::EmptySet, "max_modulus of an empty root set");
    double m = 0.0;
    for (const auto& z : r.roots) m = std::max(m, std::abs(z));
    return m;
}

}  // namespace memaccel
