#pragma once

// Real-coefficient polynomials and a simultaneous-iteration root solver.
//
// Every characteristic polynomial in the library goes through this module, so
// the solver favours determinism over raw speed: fixed initial guesses, fixed
// iteration budget, and a residual contract checked on every returned root.

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace memaccel {

using Complex = std::complex<double>;

/// Coefficients stored lowest degree first: c[0] + c[1] z + ... + c[d] z^d.
/// Trailing zeros are trimmed on construction; the zero polynomial is kept as
/// the single coefficient {0} with degree 0.
class RealPolynomial {
public:
    RealPolynomial() : coeffs_{0.0} {}
    explicit RealPolynomial(std::vector<double> coeffs);
    RealPolynomial(std::initializer_list<double> coeffs)
        : RealPolynomial(std::vector<double>(coeffs)) {}

    [[nodiscard]] int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    [[nodiscard]] bool is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
    [[nodiscard]] std::span<const double> coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] double operator[](int i) const { return coeffs_.at(static_cast<std::size_t>(i)); }
    [[nodiscard]] double leading() const noexcept { return coeffs_.back(); }
    [[nodiscard]] double max_abs_coeff() const noexcept;

    [[nodiscard]] Complex operator()(Complex z) const noexcept;

    friend RealPolynomial operator+(const RealPolynomial& a, const RealPolynomial& b);
    friend RealPolynomial operator-(const RealPolynomial& a, const RealPolynomial& b);
    friend RealPolynomial operator*(const RealPolynomial& a, const RealPolynomial& b);
    friend RealPolynomial operator*(double s, const RealPolynomial& p);
    friend bool operator==(const RealPolynomial&, const RealPolynomial&) = default;

private:
    std::vector<double> coeffs_;
};

/// Horner evaluation of p at z.
[[nodiscard]] Complex eval(const RealPolynomial& p, Complex z) noexcept;

/// Evaluates p and p' together at z.
void eval_with_derivative(std::span<const double> coeffs, Complex z, Complex& value,
                          Complex& derivative) noexcept;

/// 1 + max_{i<d} |c_i / c_d|; every root lies in the disc of that radius.
[[nodiscard]] double cauchy_bound(const RealPolynomial& p);

/// Roots with multiplicity, sorted by (re, im), with one residual per root.
///
/// The residual is |p(r)| / max(1, |r|)^d, i.e. the plain |p(r)| inside the
/// unit disc and the reversed-polynomial residual outside it. Each is
/// guaranteed to be at most residual_tol * (1 + max|c_i|).
struct ComplexRootSet {
    std::vector<Complex> roots;
    std::vector<double> residuals;

    [[nodiscard]] std::size_t size() const noexcept { return roots.size(); }
    [[nodiscard]] bool empty() const noexcept { return roots.empty(); }
};

struct RootOptions {
    int max_iterations = 500;
    double residual_tol = 1e-9;
    // Roots closer than this (relative to max(1,|z|)) are candidates for being
    // reported as one repeated root.
    double cluster_radius = 1e-6;
};

/// Aberth-Ehrlich iteration started from a circle of Cauchy-bound radius.
/// Throws DegreeZero for constant polynomials and NoConvergence when the
/// residual contract cannot be met within the iteration budget.
[[nodiscard]] ComplexRootSet roots(const RealPolynomial& p, const RootOptions& opts = {});

/// Same contract, but starts from caller-supplied guesses (e.g. the roots of a
/// nearby polynomial). Falls back to the circle start when the guesses do not
/// fit the polynomial (wrong count or coincident points).
[[nodiscard]] ComplexRootSet roots(const RealPolynomial& p, std::span<const Complex> initial_guesses,
                                   const RootOptions& opts = {});

/// Largest |root|. Throws EmptySet on an empty set.
[[nodiscard]] double max_modulus(const ComplexRootSet& r);

}  // namespace memaccel
