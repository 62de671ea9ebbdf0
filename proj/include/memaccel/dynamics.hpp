#pragma once

// Time-domain runs of the memory-accelerated iteration, in vector form and
// per mode, with link-drop experiments for consensus problems.

#include "memaccel/accel.hpp"
#include "memaccel/spectral.hpp"

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace memaccel {

/// A x = b with a symmetric A and a starting point x0.
class IterationProblem {
public:
    /// Throws InvalidArgument on size mismatch and IncompatibleBias when b has
    /// a component along the kernel of A (no fixed point exists).
    static IterationProblem make(SymmetricMatrix a, std::vector<double> b, std::vector<double> x0);
    /// Consensus on g: A = L(g), b = 0.
    static IterationProblem consensus(const WeightedGraph& g, std::vector<double> x0);

    [[nodiscard]] const SymmetricMatrix& a() const noexcept { return a_; }
    [[nodiscard]] const std::vector<double>& b() const noexcept { return b_; }
    [[nodiscard]] const std::vector<double>& x0() const noexcept { return x0_; }
    [[nodiscard]] std::size_t size() const noexcept { return x0_.size(); }
    [[nodiscard]] bool is_consensus() const noexcept { return consensus_; }

private:
    IterationProblem(SymmetricMatrix a, std::vector<double> b, std::vector<double> x0, bool consensus)
        : a_(std::move(a)), b_(std::move(b)), x0_(std::move(x0)), consensus_(consensus) {}
    SymmetricMatrix a_;
    std::vector<double> b_;
    std::vector<double> x0_;
    bool consensus_ = false;
};

using Link = std::pair<std::size_t, std::size_t>;  // stored with first < second

/// Links whose weight is zeroed at given steps. The drop at step t affects the
/// update x(t) -> x(t+1). With a period P, step t uses the entry for t mod P.
class DropSchedule {
public:
    void drop(int t, std::size_t i, std::size_t j);
    void set_period(int period);

    [[nodiscard]] std::optional<int> period() const noexcept { return period_; }
    [[nodiscard]] const std::set<Link>& at(int t) const;
    [[nodiscard]] bool empty() const noexcept { return steps_.empty(); }
    [[nodiscard]] const std::map<int, std::set<Link>>& steps() const noexcept { return steps_; }

    /// Lines "t i j" plus an optional "period P" line; '#' starts a comment.
    static DropSchedule parse(std::istream& in);
    static DropSchedule load_file(const std::string& path);
    void write(std::ostream& out) const;

private:
    std::map<int, std::set<Link>> steps_;
    std::optional<int> period_;
};

struct ConsensusMetrics {
    double spread = 0.0;  // max - min
    double rms = 0.0;     // ||x - mean 1|| / sqrt(n)
    double mean = 0.0;
};

/// Throws InvalidArgument for an empty vector.
[[nodiscard]] ConsensusMetrics consensus_metrics(const std::vector<double>& x);

struct SimTrace {
    std::vector<std::vector<double>> states;     // x(0), x(1), ...
    std::vector<double> residuals;               // ||A x(t) - b|| with the nominal A
    std::vector<ConsensusMetrics> disagreement;  // filled for consensus problems
    std::vector<std::vector<Link>> dropped_links;  // per step, filled when drops are given
    bool diverged = false;  // stopped early: ||x|| exceeded the divergence guard

    [[nodiscard]] int steps() const noexcept { return static_cast<int>(states.size()) - 1; }
};

/// Runs ||x|| past this multiple of max(||x0||, 1) are stopped and flagged.
inline constexpr double kDivergenceFactor = 1e6;

/// T steps of the vector iteration with history x(s) = x0 for s <= 0. Drops
/// require a Laplacian A (DropOnNonLaplacian) and existing links (UnknownEdge);
/// a dropped link is removed from both endpoints for that step.
[[nodiscard]] SimTrace simulate(const IterationProblem& p, const Gains& g, int T,
                                const DropSchedule* drops = nullptr);

/// T steps of one mode: x(t+1) = (1 - alpha lambda) x(t) + alpha b + sum_m beta_m (x(t-m) - x(t)).
[[nodiscard]] std::vector<double> simulate_modal(double lambda, double b_mode, const Gains& g, double x0, int T);

struct RateEstimate {
    double rate = 0.0;
    bool diverged = false;
    int points = 0;  // residuals used by the fit
};

/// exp of the least-squares slope of log residual against t, from burn_in on.
/// Samples at the floating-point floor (below 1e-11 of the largest residual)
/// end the fit window. Throws NoDecay with fewer than 10 usable samples.
[[nodiscard]] RateEstimate empirical_rate(const std::vector<double>& residuals, int burn_in, bool diverged = false);
[[nodiscard]] RateEstimate empirical_rate(const SimTrace& trace, int burn_in);

/// Header t,residual,spread,rms,mean.
void write_trace_csv(std::ostream& out, const SimTrace& trace);

}  // namespace memaccel
