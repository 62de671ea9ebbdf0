#include "memaccel/dynamics.hpp"

#include "memaccel/error.hpp"
#include "memaccel/io.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <numeric>
#include <sstream>

namespace memaccel {

namespace {

double norm(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

Link ordered(std::size_t i, std::size_t j) { return i < j ? Link{i, j} : Link{j, i}; }

}  // namespace

IterationProblem IterationProblem::make(SymmetricMatrix a, std::vector<double> b, std::vector<double> x0) {
    const std::size_t n = a.size();
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "empty problem");
    if (b.size() != n || x0.size() != n)
        throw Error(ErrorKind::InvalidArgument, "A is " + std::to_string(n) + "x" + std::to_string(n) + " but b has " +
                                                    std::to_string(b.size()) + " and x0 " +
                                                    std::to_string(x0.size()) + " entries");
    const double b_norm = norm(b);
    if (b_norm > 0.0) {
        const auto eig = symmetric_eigen(a);
        const double zero_tol = default_zero_tol(eig.values);
        for (std::size_t k = 0; k < n; ++k) {
            if (std::abs(eig.values[k]) > zero_tol) continue;
            const double along = std::inner_product(b.begin(), b.end(), eig.vectors[k].begin(), 0.0);
            if (std::abs(along) > 1e-9 * b_norm)
                throw Error(ErrorKind::IncompatibleBias,
                            "b has component " + format_number(along) + " along the kernel of A");
        }
    }
    return IterationProblem(std::move(a), std::move(b), std::move(x0), false);
}

IterationProblem IterationProblem::consensus(const WeightedGraph& g, std::vector<double> x0) {
    auto l = laplacian(g);
    std::vector<double> b(l.size(), 0.0);
    auto p = make(std::move(l), std::move(b), std::move(x0));
    p.consensus_ = true;
    return p;
}

void DropSchedule::drop(int t, std::size_t i, std::size_t j) {
    if (t < 0) throw Error(ErrorKind::InvalidArgument, "drop step must be >= 0");
    if (i == j) throw Error(ErrorKind::InvalidArgument, "a link joins two distinct nodes");
    if (period_ && t >= *period_)
        throw Error(ErrorKind::InvalidArgument, "drop step " + std::to_string(t) + " outside period " +
                                                    std::to_string(*period_));
    steps_[t].insert(ordered(i, j));
}

void DropSchedule::set_period(int period) {
    if (period < 1) throw Error(ErrorKind::InvalidArgument, "period must be >= 1");
    if (!steps_.empty() && steps_.rbegin()->first >= period)
        throw Error(ErrorKind::InvalidArgument, "existing drop steps exceed period " + std::to_string(period));
    period_ = period;
}

const std::set<Link>& DropSchedule::at(int t) const {
    static const std::set<Link> none;
    const int key = period_ ? t % *period_ : t;
    const auto it = steps_.find(key);
    return it == steps_.end() ? none : it->second;
}

DropSchedule DropSchedule::parse(std::istream& in) {
    DropSchedule out;
    std::vector<std::pair<int, Link>> entries;
    std::string line;
    for (int number = 1; std::getline(in, line); ++number) {
        const auto raw = line;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string first;
        if (!(fields >> first)) continue;
        auto fail = [&] { throw Error(ErrorKind::ParseError, "line " + std::to_string(number) + ": '" + raw + "'"); };
        std::string rest;
        if (first == "period") {
            int p = 0;
            if (!(fields >> p) || fields >> rest || p < 1 || out.period_) fail();
            out.period_ = p;
            continue;
        }
        long long t = 0, i = 0, j = 0;
        try {
            std::size_t used = 0;
            t = std::stoll(first, &used);
            if (used != first.size()) fail();
        } catch (const std::logic_error&) {
            fail();
        }
        if (!(fields >> i >> j) || fields >> rest || t < 0 || i < 0 || j < 0 || i == j) fail();
        entries.push_back({static_cast<int>(t), ordered(static_cast<std::size_t>(i), static_cast<std::size_t>(j))});
    }
    for (const auto& [t, link] : entries) {
        if (out.period_ && t >= *out.period_)
            throw Error(ErrorKind::ParseError, "drop step " + std::to_string(t) + " outside period " +
                                                   std::to_string(*out.period_));
        out.steps_[t].insert(link);
    }
    return out;
}

DropSchedule DropSchedule::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
    return parse(in);
}

void DropSchedule::write(std::ostream& out) const {
    if (period_) out << "period " << *period_ << '\n';
    for (const auto& [t, links] : steps_)
        for (const auto& [i, j] : links) out << t << ' ' << i << ' ' << j << '\n';
}

ConsensusMetrics consensus_metrics(const std::vector<double>& x) {
    if (x.empty()) throw Error(ErrorKind::InvalidArgument, "consensus metrics of an empty vector");
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    return {*hi - *lo, std::sqrt(ss / n), mean};
}

SimTrace simulate(const IterationProblem& p, const Gains& g, int T, const DropSchedule* drops) {
    if (T < 1) throw Error(ErrorKind::InvalidArgument, "simulate needs T >= 1");
    const auto& a = p.a();
    const std::size_t n = p.size();
    const bool dropping = drops != nullptr && !drops->empty();
    if (dropping) {
        if (!is_laplacian(a)) throw Error(ErrorKind::DropOnNonLaplacian, "link drops need a graph Laplacian");
        for (const auto& [t, links] : drops->steps())
            for (const auto& [i, j] : links)
                if (i >= n || j >= n || a(i, j) == 0.0)
                    throw Error(ErrorKind::UnknownEdge, "no link " + std::to_string(i) + "-" + std::to_string(j) +
                                                            " (scheduled at step " + std::to_string(t) + ")");
    }

    const int m_order = g.memory_order();
    std::deque<std::vector<double>> history(static_cast<std::size_t>(m_order), p.x0());  // history[m] = x(t-m)
    const double guard = kDivergenceFactor * std::max(norm(p.x0()), 1.0);

    SimTrace trace;
    auto record = [&](const std::vector<double>& x, const std::vector<double>& ax) {
        std::vector<double> r(n);
        for (std::size_t k = 0; k < n; ++k) r[k] = ax[k] - p.b()[k];
        trace.states.push_back(x);
        trace.residuals.push_back(norm(r));
        if (p.is_consensus()) trace.disagreement.push_back(consensus_metrics(x));
    };

    auto ax = a.apply(p.x0());
    record(p.x0(), ax);
    for (int t = 0; t < T; ++t) {
        const auto& x = history.front();
        auto at = ax;
        if (dropping) {
            std::vector<Link> removed;
            for (const auto& [i, j] : drops->at(t)) {
                const double w = -a(i, j);
                const double d = x[i] - x[j];
                at[i] -= w * d;
                at[j] += w * d;
                removed.push_back({i, j});
            }
            trace.dropped_links.push_back(std::move(removed));
        }

        std::vector<double> next(n);
        for (std::size_t k = 0; k < n; ++k) {
            double v = x[k] + g.alpha() * (p.b()[k] - at[k]);
            for (int m = 1; m < m_order; ++m) v += g.beta(m) * (history[static_cast<std::size_t>(m)][k] - x[k]);
            next[k] = v;
        }
        history.pop_back();
        history.push_front(next);
        ax = a.apply(next);
        record(next, ax);

        const double size = norm(next);
        if (!std::isfinite(size) || size > guard) {
            trace.diverged = true;
            break;
        }
    }
    return trace;
}

std::vector<double> simulate_modal(double lambda, double b_mode, const Gains& g, double x0, int T) {
    if (T < 1) throw Error(ErrorKind::InvalidArgument, "simulate_modal needs T >= 1");
    const int m_order = g.memory_order();
    std::vector<double> x(static_cast<std::size_t>(T) + 1);
    x[0] = x0;
    auto past = [&](int s) { return s <= 0 ? x0 : x[static_cast<std::size_t>(s)]; };
    for (int t = 0; t < T; ++t) {
        const double now = x[static_cast<std::size_t>(t)];
        // Same operation order as the vector update so diagonal systems agree bit for bit.
        double v = now + g.alpha() * (b_mode - lambda * now);
        for (int m = 1; m < m_order; ++m) v += g.beta(m) * (past(t - m) - now);
        x[static_cast<std::size_t>(t) + 1] = v;
    }
    return x;
}

RateEstimate empirical_rate(const std::vector<double>& residuals, int burn_in, bool diverged) {
    if (burn_in < 0) throw Error(ErrorKind::InvalidArgument, "burn_in must be >= 0");
    double peak = 0.0;
    for (double r : residuals)
        if (std::isfinite(r)) peak = std::max(peak, r);
    const double floor = 1e-11 * peak;

    std::vector<double> ts, logs;
    for (std::size_t t = static_cast<std::size_t>(burn_in); t < residuals.size(); ++t) {
        const double r = residuals[t];
        if (!std::isfinite(r) || !(r > floor)) break;
        ts.push_back(static_cast<double>(t));
        logs.push_back(std::log(r));
    }
    if (ts.size() < 10)
        throw Error(ErrorKind::NoDecay, std::to_string(ts.size()) + " usable residuals after burn-in, need 10");

    const double n = static_cast<double>(ts.size());
    const double mt = std::accumulate(ts.begin(), ts.end(), 0.0) / n;
    const double ml = std::accumulate(logs.begin(), logs.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        sxy += (ts[k] - mt) * (logs[k] - ml);
        sxx += (ts[k] - mt) * (ts[k] - mt);
    }

    RateEstimate out;
    out.rate = std::exp(sxy / sxx);
    out.points = static_cast<int>(ts.size());
    out.diverged = diverged || residuals.back() > kDivergenceFactor * residuals.front();
    return out;
}

RateEstimate empirical_rate(const SimTrace& trace, int burn_in) {
    return empirical_rate(trace.residuals, burn_in, trace.diverged);
}

void write_trace_csv(std::ostream& out, const SimTrace& trace) {
    out << "t,residual,spread,rms,mean\n";
    for (std::size_t t = 0; t < trace.states.size(); ++t) {
        const auto m = consensus_metrics(trace.states[t]);
        out << t << ',' << format_number(trace.residuals[t]) << ',' << format_number(m.spread) << ','
            << format_number(m.rms) << ',' << format_number(m.mean) << '\n';
    }
}

}  // namespace memaccel
