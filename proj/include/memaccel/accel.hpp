#pragma once

// Memory-accelerated iteration
//
//     x(t+1) = x(t) + alpha (b - A x(t)) + sum_{m=1}^{M-1} beta_m (x(t-m) - x(t))
//
// decouples along the eigenvectors of A into scalar recursions whose
// characteristic polynomial is
//
//     P(z; lambda) = z^M - (1 - alpha lambda) z^{M-1}
//                    + sum_{m=0}^{M-2} beta_{M-m-1} (z^{M-1} - z^m).
//
// The convergence guarantee of a gain vector over a set of admissible
// eigenvalues is the largest root modulus of P over that set.

#include "memaccel/polyroots.hpp"
#include "memaccel/spectral.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace memaccel {

/// (alpha, beta_1..beta_{M-1}); M = betas.size() + 1. alpha == 0 is rejected:
/// every state would be a fixed point and nothing converges.
class Gains {
public:
    /// Throws AlphaZero for alpha == 0 and InvalidArgument for non-finite values.
    static Gains make(double alpha, std::vector<double> betas = {});

    [[nodiscard]] int memory_order() const noexcept { return static_cast<int>(betas_.size()) + 1; }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] std::span<const double> betas() const noexcept { return betas_; }
    /// beta_m for m in [1, M-1]; zero beyond.
    [[nodiscard]] double beta(int m) const noexcept;

    friend bool operator==(const Gains&, const Gains&) = default;

private:
    Gains(double alpha, std::vector<double> betas) : alpha_(alpha), betas_(std::move(betas)) {}
    double alpha_ = 1.0;
    std::vector<double> betas_;
};

struct MemorylessTuning {
    double alpha = 0.0;
    double mu = 0.0;
};

struct TuningResult {
    Gains gains = Gains::make(1.0);
    double mu = 0.0;
    double nu_star = 0.0;
    double beta1_star = 0.0;
    double alpha_star = 0.0;
    // lo == hi: the closed form has a removable singularity at mu = 0 and the
    // deadbeat limit (alpha = 1/lambda, beta_1 = 0, nu = 0) is returned.
    bool degenerate = false;
};

struct GuaranteeSample {
    double lambda = 0.0;
    double modulus = 0.0;
};

struct GuaranteeReport {
    double nu = 0.0;
    double worst_lambda = 0.0;
    std::vector<GuaranteeSample> samples;  // sorted by lambda
    bool refined = false;
};

struct GuaranteeOptions {
    int grid = 2001;           // uniform samples per interval, endpoints included
    double refine_tol = 1e-10;  // golden-section bracket width; <= 0 disables refinement
};

/// Monic degree-M characteristic polynomial of the mode with eigenvalue lambda.
[[nodiscard]] RealPolynomial char_poly(const Gains& g, double lambda);

[[nodiscard]] ComplexRootSet mode_roots(const Gains& g, double lambda);

/// sup over lambda in s of the largest root modulus, approximated by a uniform
/// grid per interval plus golden-section refinement around each local maximum.
/// Isolated points are evaluated exactly. Ties resolve to the smaller lambda.
[[nodiscard]] GuaranteeReport guarantee(const Gains& g, const SpectralSet& s, const GuaranteeOptions& opts = {});

/// alpha = 2 / (hi + lo), mu = (hi - lo) / (hi + lo).
[[nodiscard]] MemorylessTuning tune_memoryless(const SpectralInterval& iv);

/// mu / (1 + sqrt(1 - mu^2)), i.e. 1/mu - sqrt(1/mu^2 - 1) without the
/// cancellation near mu = 0.
[[nodiscard]] double single_memory_rate(double mu);

/// Optimal worst-case tuning for eigenvalues known only to lie in iv. Uses one
/// memory slot; for M > 2 the extra gains are zero. Throws InvalidArgument for M < 2.
[[nodiscard]] TuningResult tune_single_memory(const SpectralInterval& iv, int memory_order = 2);

/// Angle in [0, pi] of the upper root nu e^{i theta} of the single-memory
/// tuned mode at lambda. Runs monotonically from 0 at iv.lo to pi at iv.hi.
/// Throws OutOfInterval.
[[nodiscard]] double modal_angle(double lambda, const SpectralInterval& iv);

struct SearchOptions {
    int budget = 2000;          // guarantee evaluations
    std::uint64_t rng_seed = 0;
    int restarts = 5;
    double jitter = 0.01;       // relative restart perturbation
    int search_grid = 201;      // grid used inside the objective
    GuaranteeOptions final_options{};
};

struct SearchResult {
    Gains gains = Gains::make(1.0);
    GuaranteeReport report;
    GuaranteeReport seed_report;
    int evaluations = 0;
    bool improved = false;
};

/// Derivative-free local descent (Nelder-Mead with jittered restarts) on
/// (alpha, beta_1..beta_{M-1}) minimising the guarantee over s. Deterministic
/// for a given rng_seed. The seed defaults to the single-memory tuning on the
/// hull of s padded to order M. The returned guarantee never exceeds the
/// seed's (both measured with final_options).
[[nodiscard]] SearchResult search_gains(const SpectralSet& s, int memory_order, std::optional<Gains> seed = std::nullopt,
                                        const SearchOptions& opts = {});

}  // namespace memaccel
