#include "memaccel/accel.hpp"

#include "memaccel/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>

namespace memaccel {

namespace {

using Point = std::vector<double>;

Gains to_gains(const Point& x) {
    return Gains::make(x[0], Point(x.begin() + 1, x.end()));
}

Point to_point(const Gains& g) {
    Point x{g.alpha()};
    x.insert(x.end(), g.betas().begin(), g.betas().end());
    return x;
}

// Counts evaluations against a shared budget and remembers the best point.
struct Objective {
    Objective(std::function<double(const Point&)> f, int b) : fn(std::move(f)), budget(b) {}

    std::function<double(const Point&)> fn;
    int budget;
    int used = 0;
    Point best;
    double best_value = std::numeric_limits<double>::infinity();

    [[nodiscard]] bool exhausted() const { return used >= budget; }

    double operator()(const Point& x) {
        ++used;
        const double v = fn(x);
        if (v < best_value) {
            best_value = v;
            best = x;
        }
        return v;
    }
};

// Standard Nelder-Mead (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
void nelder_mead(Objective& f, const Point& start, const Point& steps, int max_evals) {
    const std::size_t n = start.size();
    const int stop_at = std::min(f.budget, f.used + max_evals);

    std::vector<Point> simplex(n + 1, start);
    std::vector<double> value(n + 1);
    for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += steps[i];
    for (std::size_t i = 0; i <= n && f.used < stop_at; ++i) value[i] = f(simplex[i]);
    if (f.used >= stop_at) return;

    std::vector<std::size_t> order(n + 1);
    auto point_along = [&](const Point& centre, const Point& from, double scale) {
        Point p(n);
        for (std::size_t k = 0; k < n; ++k) p[k] = centre[k] + scale * (from[k] - centre[k]);
        return p;
    };

    while (f.used < stop_at) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return value[a] < value[b]; });
        const auto best = order.front(), worst = order.back(), second = order[n - 1];

        double size = 0.0;
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t k = 0; k < n; ++k) size = std::max(size, std::abs(simplex[i][k] - simplex[best][k]));
        if (value[worst] - value[best] <= 1e-12 && size <= 1e-9) return;
        if (size <= 1e-12) return;

        Point centre(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i)
            if (i != worst)
                for (std::size_t k = 0; k < n; ++k) centre[k] += simplex[i][k] / static_cast<double>(n);

        const Point reflected = point_along(centre, simplex[worst], -1.0);
        const double fr = f(reflected);
        if (fr < value[best]) {
            if (f.used >= stop_at) return;
            const Point expanded = point_along(centre, simplex[worst], -2.0);
            const double fe = f(expanded);
            if (fe < fr) {
                simplex[worst] = expanded;
                value[worst] = fe;
            } else {
                simplex[worst] = reflected;
                value[worst] = fr;
            }
            continue;
        }
        if (fr < value[second]) {
            simplex[worst] = reflected;
            value[worst] = fr;
            continue;
        }
        if (f.used >= stop_at) return;
        const bool outside = fr < value[worst];
        const Point contracted = point_along(centre, outside ? reflected : simplex[worst], 0.5);
        const double fc = f(contracted);
        if (fc < std::min(fr, value[worst])) {
            simplex[worst] = contracted;
            value[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i <= n && f.used < stop_at; ++i) {
            if (i == best) continue;
            simplex[i] = point_along(simplex[best], simplex[i], 0.5);
            value[i] = f(simplex[i]);
        }
    }
}

// The guarantee has square-root cusps wherever a double root splits, so a small
// first simplex collapses onto the seed. Half-size steps span the basin.
Point initial_steps(const Point& x) {
    Point steps(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) steps[k] = x[k] != 0.0 ? 0.5 * std::abs(x[k]) : 0.1;
    return steps;
}

}  // namespace

SearchResult search_gains(const SpectralSet& s, int memory_order, std::optional<Gains> seed, const SearchOptions& opts) {
    if (memory_order < 1) throw Error(ErrorKind::InvalidArgument, "memory order must be >= 1");
    if (opts.budget < 1) throw Error(ErrorKind::InvalidArgument, "search budget must be >= 1");
    if (s.empty()) throw Error(ErrorKind::EmptySet, "search over an empty spectral set");

    if (!seed) {
        const auto hull = s.hull();
        if (memory_order == 1)
            seed = Gains::make(tune_memoryless(hull).alpha);
        else
            seed = tune_single_memory(hull, memory_order).gains;
    }
    if (seed->memory_order() != memory_order)
        throw Error(ErrorKind::InvalidArgument, "seed gains have memory order " + std::to_string(seed->memory_order()));

    GuaranteeOptions coarse = opts.final_options;
    coarse.grid = std::max(2, opts.search_grid);

    Objective objective{
        [&](const Point& x) {
            try {
                return guarantee(to_gains(x), s, coarse).nu;
            } catch (const Error&) {
                return std::numeric_limits<double>::infinity();
            }
        },
        opts.budget};

    std::mt19937_64 rng(opts.rng_seed);
    std::normal_distribution<double> noise(0.0, 1.0);

    const Point start = to_point(*seed);
    (void)objective(start);
    const int runs = opts.restarts + 1;
    for (int run = 0; run < runs && !objective.exhausted(); ++run) {
        Point from = objective.best;
        if (run > 0)
            for (auto& v : from) v += opts.jitter * std::max(std::abs(v), 0.1) * noise(rng);
        const int share = std::max(1, (opts.budget - objective.used) / (runs - run));
        nelder_mead(objective, from, initial_steps(from), share);
    }

    SearchResult out;
    out.evaluations = objective.used;
    out.seed_report = guarantee(*seed, s, opts.final_options);
    out.gains = *seed;
    out.report = out.seed_report;
    try {
        const auto candidate = to_gains(objective.best);
        auto report = guarantee(candidate, s, opts.final_options);
        if (report.nu < out.seed_report.nu) {
            out.gains = candidate;
            out.report = std::move(report);
            out.improved = true;
        }
    } catch (const Error&) {
        // best is the zero-alpha point; keep the seed
    }
    return out;
}

}  // namespace memaccel
