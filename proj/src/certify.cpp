#include "memaccel/certify.hpp"

#include "memaccel/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace memaccel {

namespace {

constexpr double kInvPhi = 0.6180339887498949;

double wrapped(double angle) { return std::remainder(angle, 2.0 * std::numbers::pi); }

struct Peak {
    Complex root{};
    double modulus = 0.0;
};

Peak largest_root(const ComplexRootSet& r) {
    Peak p{{}, -1.0};
    for (const auto& z : r.roots)
        if (std::abs(z) > p.modulus) {
            p.root = z;
            p.modulus = std::abs(z);
        }
    return p;
}

}  // namespace

ClaimCoeffs ClaimCoeffs::make(int M, double nu, std::vector<double> a) {
    if (M < 2) throw Error(ErrorKind::InvalidArgument, "coefficient vectors need M >= 2");
    if (a.size() != static_cast<std::size_t>(M))
        throw Error(ErrorKind::InvalidArgument, "expected " + std::to_string(M) + " coefficients, got " +
                                                    std::to_string(a.size()));
    if (!(nu > 0.0 && nu < 1.0)) throw Error(ErrorKind::InvalidArgument, "nu must lie in (0, 1)");
    for (double v : a)
        if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "coefficients must be finite");
    if (std::abs(a.back() + 1.0) < 1e-12)
        throw Error(ErrorKind::BetaTildeMinusOne, "a_{M-1} = -1 drops the leading term");
    return {M, nu, std::move(a)};
}

bool ClaimCoeffs::all_zero() const noexcept {
    return std::all_of(a.begin(), a.end(), [](double v) { return v == 0.0; });
}

ClaimCoeffs gains_to_claim_coeffs(const Gains& g, const SpectralInterval& iv) {
    const int m_order = g.memory_order();
    if (m_order < 2) throw Error(ErrorKind::InvalidArgument, "coefficient map needs M >= 2");
    if (iv.degenerate()) throw Error(ErrorKind::InvalidArgument, "coefficient map needs lo < hi");
    const auto opt = tune_single_memory(iv);
    const double ratio = opt.alpha_star / g.alpha();
    // a_{M-1} = ratio - 1, so this is the a_{M-1} = -1 exclusion.
    if (std::abs(ratio) < 1e-12)
        throw Error(ErrorKind::BetaTildeMinusOne, "alpha*/alpha vanishes; alpha is effectively infinite");

    const auto m = static_cast<std::size_t>(m_order);
    std::vector<double> bt(m);
    // Partial sums beta_{M-1} + ... + beta_{M-1-k}; the absorbed zeroth gain never enters.
    double partial = 0.0;
    for (std::size_t k = 0; k + 1 < m; ++k) {
        partial += g.beta(m_order - 1 - static_cast<int>(k));
        bt[k] = ratio * partial;
    }
    bt[m - 2] -= opt.beta1_star;
    bt[m - 1] = ratio - 1.0;

    std::vector<double> a(m);
    for (std::size_t k = 0; k < m; ++k) a[k] = bt[k] * std::pow(opt.nu_star, static_cast<double>(k) - (m_order - 1));
    return ClaimCoeffs::make(m_order, opt.nu_star, std::move(a));
}

RealPolynomial tail_polynomial(const ClaimCoeffs& c) { return RealPolynomial(c.a); }

RealPolynomial p1_polynomial(const ClaimCoeffs& c, double theta) {
    std::vector<double> coeffs(static_cast<std::size_t>(c.M) + 1, 0.0);
    coeffs[static_cast<std::size_t>(c.M) - 2] = 1.0;
    coeffs[static_cast<std::size_t>(c.M) - 1] = -2.0 * std::cos(theta);
    coeffs[static_cast<std::size_t>(c.M)] = 1.0;
    return RealPolynomial(std::move(coeffs));
}

RealPolynomial p2_polynomial(const ClaimCoeffs& c) {
    return RealPolynomial{1.0 / c.nu, -1.0} * tail_polynomial(c);
}

RealPolynomial p_tilde(const ClaimCoeffs& c, double theta) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi))
        throw Error(ErrorKind::OutOfInterval, "theta must lie in [0, pi]");
    return p1_polynomial(c, theta) - p2_polynomial(c);
}

SpecialCaseResult special_case_check(const ClaimCoeffs& c, double tol) {
    SpecialCaseResult out;
    if (c.all_zero()) {
        out.zero_polynomial = true;
        return out;
    }
    const auto tail = tail_polynomial(c);
    if (tail.degree() >= 1) {
        for (const auto& y : roots(tail).roots) {
            if (std::abs(std::abs(y) - 1.0) <= tol) {
                out.kind = SpecialCase::UnitCircleRoot;
                out.root = y;
                out.theta = std::abs(std::arg(y));
                return out;
            }
        }
    }
    if (c.a.back() < -1.0) out.kind = SpecialCase::LeadingBelowMinusOne;
    return out;
}

WitnessReport find_witness(const ClaimCoeffs& c, const WitnessOptions& opts) {
    if (opts.theta_samples < 2) throw Error(ErrorKind::InvalidArgument, "need at least 2 theta samples");
    WitnessReport out;
    const double target = 1.0 - opts.witness_tol;
    auto at = [&](double theta) { return largest_root(roots(p_tilde(c, theta))); };

    const auto special = special_case_check(c);
    if (special.kind == SpecialCase::UnitCircleRoot) {
        out.found = true;
        out.theta = std::clamp(special.theta, 0.0, std::numbers::pi);
        out.root = special.root;
        out.modulus = std::max(at(out.theta).modulus, std::abs(special.root));
        out.route = "unit_circle_root";
        return out;
    }
    if (special.kind == SpecialCase::LeadingBelowMinusOne) {
        const auto peak = at(0.0);
        out.found = peak.modulus >= target;
        out.theta = 0.0;
        out.root = peak.root;
        out.modulus = peak.modulus;
        out.route = out.found ? "leading_below_minus_one" : "none";
        return out;
    }

    const int n = opts.theta_samples;
    std::vector<Complex> previous;
    int best_index = 0;
    Peak best;
    for (int i = 0; i < n; ++i) {
        const double theta = i == n - 1 ? std::numbers::pi : std::numbers::pi * i / (n - 1);
        auto r = roots(p_tilde(c, theta), previous);
        previous = r.roots;
        const auto peak = largest_root(r);
        ++out.scanned;
        if (i == 0 || peak.modulus > best.modulus) {
            best = peak;
            best_index = i;
        }
        if (peak.modulus >= target) {
            out.found = true;
            out.theta = theta;
            out.root = peak.root;
            out.modulus = peak.modulus;
            out.route = "scan";
            return out;
        }
    }

    // Golden-section polish of the modulus-vs-theta curve around the best sample.
    double lo = std::numbers::pi * std::max(best_index - 1, 0) / (n - 1);
    double hi = std::numbers::pi * std::min(best_index + 1, n - 1) / (n - 1);
    double x1 = hi - kInvPhi * (hi - lo), x2 = lo + kInvPhi * (hi - lo);
    Peak f1 = at(x1), f2 = at(x2);
    double best_theta = std::numbers::pi * best_index / (n - 1);
    auto consider = [&](double theta, const Peak& p) {
        if (p.modulus > best.modulus) {
            best = p;
            best_theta = theta;
        }
    };
    consider(x1, f1);
    consider(x2, f2);
    while (hi - lo > opts.polish_tol) {
        if (f1.modulus >= f2.modulus) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = at(x1);
            consider(x1, f1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = at(x2);
            consider(x2, f2);
        }
    }
    out.theta = best_theta;
    out.root = best.root;
    out.modulus = best.modulus;
    out.found = best.modulus >= target;
    out.route = out.found ? "polish" : "none";
    return out;
}

Complex PartitionField::centre(int row, int col) const {
    const double dx = (window.re_max - window.re_min) / window.nx;
    const double dy = (window.im_max - window.im_min) / window.ny;
    return {window.re_min + (col + 0.5) * dx, window.im_min + (row + 0.5) * dy};
}

int cell_type(const ClaimCoeffs& c, double theta, Complex y, double tie_tol) {
    const double gap = std::abs(eval(p1_polynomial(c, theta), y)) - std::abs(eval(p2_polynomial(c), y));
    if (std::abs(gap) < tie_tol) return 0;
    return gap > 0.0 ? 1 : -1;
}

PartitionField partition_field(const ClaimCoeffs& c, double theta, const FieldWindow& window, double angle_tol,
                               double tie_tol) {
    if (window.nx < 32 || window.ny < 32) throw Error(ErrorKind::InvalidArgument, "field resolution must be >= 32x32");
    if (!(window.re_max > window.re_min && window.im_max > window.im_min))
        throw Error(ErrorKind::InvalidArgument, "empty field window");

    PartitionField f;
    f.window = window;
    f.theta = theta;
    f.tie_tol = tie_tol;
    f.angle_tol = angle_tol;
    const auto p1 = p1_polynomial(c, theta);
    const auto p2 = p2_polynomial(c);
    const auto cells = static_cast<std::size_t>(window.nx) * static_cast<std::size_t>(window.ny);
    f.type_mask.resize(cells);
    f.phase_match.resize(cells);
    for (int r = 0; r < window.ny; ++r)
        for (int col = 0; col < window.nx; ++col) {
            const Complex y = f.centre(r, col);
            const Complex v1 = eval(p1, y), v2 = eval(p2, y);
            const double gap = std::abs(v1) - std::abs(v2);
            const auto k = static_cast<std::size_t>(r) * static_cast<std::size_t>(window.nx) +
                           static_cast<std::size_t>(col);
            f.type_mask[k] = std::abs(gap) < tie_tol ? 0 : (gap > 0.0 ? 1 : -1);
            f.phase_match[k] = v1 != 0.0 && v2 != 0.0 && std::abs(wrapped(std::arg(v1) - std::arg(v2))) <= angle_tol;
        }
    f.roots_p1 = roots(p1).roots;
    if (!p2.is_zero()) f.roots_p2 = roots(p2).roots;
    return f;
}

double min_phase_check_radius(const ClaimCoeffs& c) {
    // P1 = y^M - 2 cos(theta) y^{M-1} + y^{M-2}: its Cauchy bound is at most 3.
    const auto p2 = p2_polynomial(c);
    const double bound = p2.degree() >= 1 ? cauchy_bound(p2) : 1.0;
    return 10.0 * (1.0 + std::max(3.0, bound));
}

PhaseCheckResult large_radius_phase_check(const ClaimCoeffs& c, double R, int theta_samples, int phase_samples) {
    if (!(c.a.back() > 0.0)) throw Error(ErrorKind::PreconditionViolation, "large-radius check needs a_{M-1} > 0");
    if (!(R >= min_phase_check_radius(c)))
        throw Error(ErrorKind::PreconditionViolation,
                    "radius " + std::to_string(R) + " below " + std::to_string(min_phase_check_radius(c)));
    if (theta_samples < 2 || phase_samples < 1) throw Error(ErrorKind::InvalidArgument, "too few samples");

    const auto p2 = p2_polynomial(c);
    std::vector<Complex> ring(static_cast<std::size_t>(phase_samples));
    std::vector<Complex> p2_ring(ring.size());
    for (std::size_t j = 0; j < ring.size(); ++j) {
        ring[j] = std::polar(R, 2.0 * std::numbers::pi * static_cast<double>(j) / phase_samples);
        p2_ring[j] = eval(p2, ring[j]);
    }
    for (int i = 0; i < theta_samples; ++i) {
        const double theta = std::numbers::pi * i / (theta_samples - 1);
        const auto p1 = p1_polynomial(c, theta);
        for (std::size_t j = 0; j < ring.size(); ++j)
            if (!((eval(p1, ring[j]) / p2_ring[j]).real() < 0.0)) return {false, theta, ring[j]};
    }
    return {};
}

}  // namespace memaccel
