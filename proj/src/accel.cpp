#include "memaccel/accel.hpp"

#include "memaccel/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace memaccel {

namespace {

struct Sampler {
    const Gains& gains;
    std::vector<Complex> previous;

    // Consecutive grid points have nearby roots, so each solve starts from the
    // last one's roots.
    double warm(double lambda) {
        auto r = roots(char_poly(gains, lambda), previous);
        previous = r.roots;
        return max_modulus(r);
    }
    double cold(double lambda) const { return max_modulus(mode_roots(gains, lambda)); }
};

constexpr double kInvPhi = 0.6180339887498949;

// Golden-section search for the maximum of f on [a, b]; returns the best point seen.
template <typename F>
GuaranteeSample golden_max(F&& f, double a, double b, double tol) {
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c), fd = f(d);
    GuaranteeSample best = fc >= fd ? GuaranteeSample{c, fc} : GuaranteeSample{d, fd};
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
            if (fc > best.modulus || (fc == best.modulus && c < best.lambda)) best = {c, fc};
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
            if (fd > best.modulus || (fd == best.modulus && d < best.lambda)) best = {d, fd};
        }
    }
    return best;
}

}  // namespace

Gains Gains::make(double alpha, std::vector<double> betas) {
    if (alpha == 0.0) throw Error(ErrorKind::AlphaZero, "alpha = 0 makes every state stationary");
    if (!std::isfinite(alpha)) throw Error(ErrorKind::InvalidArgument, "alpha must be finite");
    for (double b : betas)
        if (!std::isfinite(b)) throw Error(ErrorKind::InvalidArgument, "memory gains must be finite");
    return Gains(alpha, std::move(betas));
}

double Gains::beta(int m) const noexcept {
    if (m < 1 || m > static_cast<int>(betas_.size())) return 0.0;
    return betas_[static_cast<std::size_t>(m - 1)];
}

RealPolynomial char_poly(const Gains& g, double lambda) {
    const int m_order = g.memory_order();
    std::vector<double> c(static_cast<std::size_t>(m_order) + 1, 0.0);
    c[static_cast<std::size_t>(m_order)] = 1.0;
    double beta_sum = 0.0;
    for (int m = 1; m < m_order; ++m) {
        beta_sum += g.beta(m);
        // beta_m (z^{M-1} - z^{M-1-m})
        c[static_cast<std::size_t>(m_order - 1 - m)] -= g.beta(m);
    }
    c[static_cast<std::size_t>(m_order - 1)] += -(1.0 - g.alpha() * lambda) + beta_sum;
    return RealPolynomial(std::move(c));
}

ComplexRootSet mode_roots(const Gains& g, double lambda) { return roots(char_poly(g, lambda)); }

GuaranteeReport guarantee(const Gains& g, const SpectralSet& s, const GuaranteeOptions& opts) {
    if (s.empty()) throw Error(ErrorKind::EmptySet, "guarantee over an empty spectral set");
    if (opts.grid < 2) throw Error(ErrorKind::InvalidArgument, "guarantee grid must be >= 2");

    GuaranteeReport report;
    Sampler sampler{g, {}};
    auto& samples = report.samples;

    for (const auto& iv : s.intervals()) {
        const int n = opts.grid;
        std::vector<GuaranteeSample> grid(static_cast<std::size_t>(n));
        sampler.previous.clear();
        for (int i = 0; i < n; ++i) {
            const double lambda = (i == n - 1) ? iv.hi : iv.lo + (iv.hi - iv.lo) * i / (n - 1);
            grid[static_cast<std::size_t>(i)] = {lambda, sampler.warm(lambda)};
        }

        if (opts.refine_tol > 0.0) {
            double top = 0.0;
            for (const auto& smp : grid) top = std::max(top, smp.modulus);
            std::vector<GuaranteeSample> extra;
            for (int i = 0; i < n; ++i) {
                const auto& here = grid[static_cast<std::size_t>(i)];
                const double left = i > 0 ? grid[static_cast<std::size_t>(i - 1)].modulus : -1.0;
                const double right = i + 1 < n ? grid[static_cast<std::size_t>(i + 1)].modulus : -1.0;
                if (here.modulus < left || here.modulus < right) continue;
                // Flat stretches (e.g. the constant-modulus optimum) carry no peak to refine.
                const double noise = 1e-12 * std::max(1.0, here.modulus);
                const double dl = left < 0.0 ? 0.0 : here.modulus - left;
                const double dr = right < 0.0 ? 0.0 : here.modulus - right;
                if (dl <= noise && dr <= noise) continue;
                // A peak between samples rises at most a few neighbour steps above its best sample.
                if (here.modulus + 4.0 * std::max(dl, dr) + noise < top) continue;

                const double a = grid[static_cast<std::size_t>(std::max(i - 1, 0))].lambda;
                const double b = grid[static_cast<std::size_t>(std::min(i + 1, n - 1))].lambda;
                auto best = golden_max([&](double l) { return sampler.cold(l); }, a, b, opts.refine_tol);
                report.refined = true;
                if (best.modulus > here.modulus) extra.push_back(best);
            }
            grid.insert(grid.end(), extra.begin(), extra.end());
        }
        samples.insert(samples.end(), grid.begin(), grid.end());
    }
    for (double p : s.points()) samples.push_back({p, sampler.cold(p)});

    std::sort(samples.begin(), samples.end(),
              [](const auto& a, const auto& b) { return a.lambda < b.lambda; });
    report.nu = samples.front().modulus;
    report.worst_lambda = samples.front().lambda;
    for (const auto& smp : samples)
        if (smp.modulus > report.nu) {
            report.nu = smp.modulus;
            report.worst_lambda = smp.lambda;
        }
    return report;
}

MemorylessTuning tune_memoryless(const SpectralInterval& iv) {
    const auto checked = SpectralInterval::make(iv.lo, iv.hi);
    return {2.0 / (checked.hi + checked.lo), (checked.hi - checked.lo) / (checked.hi + checked.lo)};
}

double single_memory_rate(double mu) { return mu / (1.0 + std::sqrt(1.0 - mu * mu)); }

TuningResult tune_single_memory(const SpectralInterval& iv, int memory_order) {
    if (memory_order < 2) throw Error(ErrorKind::InvalidArgument, "single-memory tuning needs M >= 2");
    const auto base = tune_memoryless(iv);
    TuningResult out;
    out.mu = base.mu;
    out.nu_star = single_memory_rate(base.mu);
    out.beta1_star = -out.nu_star * out.nu_star;
    out.alpha_star = 2.0 * (1.0 - out.beta1_star) / (iv.hi + iv.lo);
    out.degenerate = iv.degenerate();
    std::vector<double> betas(static_cast<std::size_t>(memory_order - 1), 0.0);
    betas[0] = out.beta1_star;
    out.gains = Gains::make(out.alpha_star, std::move(betas));
    return out;
}

double modal_angle(double lambda, const SpectralInterval& iv) {
    if (!iv.contains(lambda))
        throw Error(ErrorKind::OutOfInterval, std::to_string(lambda) + " outside [" + std::to_string(iv.lo) + ", " +
                                                  std::to_string(iv.hi) + "]");
    if (iv.degenerate()) return 0.0;
    const auto r = mode_roots(tune_single_memory(iv).gains, lambda);
    const auto upper = std::max_element(r.roots.begin(), r.roots.end(), [](const Complex& a, const Complex& b) {
        return a.imag() != b.imag() ? a.imag() < b.imag() : std::abs(a) < std::abs(b);
    });
    return std::atan2(std::abs(upper->imag()), upper->real());
}

}  // namespace memaccel
