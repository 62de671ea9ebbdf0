#pragma once

// Numerical checks around the single-memory optimum. Any gain vector is mapped
// to coefficients a_0..a_{M-1} such that, after the rescaling y = z / nu*,
// each mode polynomial becomes (up to a constant factor)
//
//     Pt(y; theta) = (y^2 - 2 cos(theta) y + 1) y^{M-2} + (y - 1/nu) sum_k a_k y^k
//                  = P1(y; theta) - P2(y),
//
// where theta is the modal angle of the mode's eigenvalue. A gain vector beats
// the optimum only if no theta gives Pt a root of modulus >= 1.

#include "memaccel/accel.hpp"
#include "memaccel/polyroots.hpp"
#include "memaccel/spectral.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace memaccel {

struct ClaimCoeffs {
    int M = 2;
    double nu = 0.5;
    std::vector<double> a;  // a_0..a_{M-1}

    /// Throws InvalidArgument (M < 2, a.size() != M, nu outside (0,1),
    /// non-finite values) or BetaTildeMinusOne (a_{M-1} = -1).
    static ClaimCoeffs make(int M, double nu, std::vector<double> a);
    [[nodiscard]] bool all_zero() const noexcept;
};

/// Coefficients of g relative to the single-memory tuning on iv. The interval
/// must be nondegenerate (nu* = 0 otherwise). Throws BetaTildeMinusOne when
/// alpha*/alpha is within 1e-12 of 0.
[[nodiscard]] ClaimCoeffs gains_to_claim_coeffs(const Gains& g, const SpectralInterval& iv);

/// sum_k a_k y^k.
[[nodiscard]] RealPolynomial tail_polynomial(const ClaimCoeffs& c);
/// (y^2 - 2 cos(theta) y + 1) y^{M-2}.
[[nodiscard]] RealPolynomial p1_polynomial(const ClaimCoeffs& c, double theta);
/// -(y - 1/nu) sum_k a_k y^k.
[[nodiscard]] RealPolynomial p2_polynomial(const ClaimCoeffs& c);
/// P1 - P2. Throws OutOfInterval unless theta is in [0, pi].
[[nodiscard]] RealPolynomial p_tilde(const ClaimCoeffs& c, double theta);

enum class SpecialCase { None, UnitCircleRoot, LeadingBelowMinusOne };

struct SpecialCaseResult {
    SpecialCase kind = SpecialCase::None;
    Complex root{};              // the unit-circle root for UnitCircleRoot
    double theta = 0.0;          // |arg root|: Pt(root; theta) = 0
    bool zero_polynomial = false;  // every a_k is zero (reported as None)
};

/// (a) some root of sum a_k y^k lies within tol of the unit circle, or
/// (b) a_{M-1} < -1, in which case Pt has a real root beyond 1/nu for every theta.
[[nodiscard]] SpecialCaseResult special_case_check(const ClaimCoeffs& c, double tol = 1e-9);

struct WitnessOptions {
    int theta_samples = 4096;
    double witness_tol = 1e-8;
    double polish_tol = 1e-12;
};

struct WitnessReport {
    bool found = false;
    double theta = 0.0;
    Complex root{};
    double modulus = 0.0;  // largest root modulus of Pt at theta
    int scanned = 0;       // theta samples evaluated
    std::string route;     // "unit_circle_root", "leading_below_minus_one", "scan", "polish" or "none"
};

/// Searches theta in [0, pi] for a root of Pt with modulus >= 1 - witness_tol:
/// special cases first, then a uniform scan stopping at the first hit, then a
/// golden-section polish around the best sample.
[[nodiscard]] WitnessReport find_witness(const ClaimCoeffs& c, const WitnessOptions& opts = {});

struct FieldWindow {
    double re_min = -2.0, re_max = 2.0;
    double im_min = -2.0, im_max = 2.0;
    int nx = 256, ny = 256;  // >= 32 each
};

struct PartitionField {
    FieldWindow window;
    double theta = 0.0;
    double tie_tol = 1e-12;
    double angle_tol = 0.02;
    // Row-major, row r at im = im_min + (r + 1/2) dy, column c at re = re_min + (c + 1/2) dx.
    std::vector<std::int8_t> type_mask;   // +1: |P1| > |P2|, -1: |P2| > |P1|, 0: tie
    std::vector<std::uint8_t> phase_match;  // arg P1 and arg P2 within angle_tol
    std::vector<Complex> roots_p1;
    std::vector<Complex> roots_p2;

    [[nodiscard]] std::int8_t type_at(int row, int col) const {
        return type_mask[static_cast<std::size_t>(row) * static_cast<std::size_t>(window.nx) +
                         static_cast<std::size_t>(col)];
    }
    [[nodiscard]] Complex centre(int row, int col) const;
};

/// Sign of |P1(y)| - |P2(y)|, zero when the gap is below tie_tol.
[[nodiscard]] int cell_type(const ClaimCoeffs& c, double theta, Complex y, double tie_tol = 1e-12);

/// Throws InvalidArgument for resolutions below 32 or an empty window.
[[nodiscard]] PartitionField partition_field(const ClaimCoeffs& c, double theta, const FieldWindow& window,
                                             double angle_tol = 0.02, double tie_tol = 1e-12);

struct PhaseCheckResult {
    bool ok = true;
    double theta = 0.0;  // first violating sample when !ok
    Complex y{};
};

/// 10 (1 + the larger Cauchy bound of P1 over all theta and P2).
[[nodiscard]] double min_phase_check_radius(const ClaimCoeffs& c);

/// Checks Re(P1/P2) < 0 on |y| = R over theta_samples angles in [0, pi] and
/// phase_samples points of the circle. Throws PreconditionViolation unless
/// a_{M-1} > 0 and R >= min_phase_check_radius(c).
[[nodiscard]] PhaseCheckResult large_radius_phase_check(const ClaimCoeffs& c, double R, int theta_samples = 512,
                                                        int phase_samples = 512);

}  // namespace memaccel
