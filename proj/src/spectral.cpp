#include "memaccel/spectral.hpp"

#include "memaccel/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace memaccel {

namespace {

std::string pair_text(std::size_t i, std::size_t j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

double parse_double(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
        throw Error(ErrorKind::ParseError, "not a number: '" + std::string(s) + "'");
    return v;
}

}  // namespace

void WeightedGraph::add_edge(std::size_t i, std::size_t j, double w) {
    if (i == j) throw Error(ErrorKind::InvalidArgument, "self loop at node " + std::to_string(i));
    if (!std::isfinite(w)) throw Error(ErrorKind::InvalidArgument, "non-finite weight on " + pair_text(i, j));
    if (w < 0.0) throw Error(ErrorKind::NegativeWeight, pair_text(i, j));
    if (has_edge(i, j)) throw Error(ErrorKind::DuplicateEdge, pair_text(std::min(i, j), std::max(i, j)));
    n_ = std::max(n_, std::max(i, j) + 1);
    edges_.push_back({i, j, w});
}

bool WeightedGraph::has_edge(std::size_t i, std::size_t j) const noexcept {
    return std::any_of(edges_.begin(), edges_.end(),
                       [&](const Edge& e) { return (e.i == i && e.j == j) || (e.i == j && e.j == i); });
}

WeightedGraph WeightedGraph::without(const std::vector<std::pair<std::size_t, std::size_t>>& dropped) const {
    WeightedGraph out(n_);
    for (const auto& e : edges_) {
        const bool gone = std::any_of(dropped.begin(), dropped.end(), [&](const auto& d) {
            return (d.first == e.i && d.second == e.j) || (d.first == e.j && d.second == e.i);
        });
        if (!gone) out.edges_.push_back(e);
    }
    return out;
}

WeightedGraph load_edge_list(std::istream& in) {
    WeightedGraph g;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        long long i = -1, j = -1;
        double w = 0.0;
        std::string rest;
        if (!(ls >> i >> j >> w) || (ls >> rest) || i < 0 || j < 0)
            throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": '" + line + "'");
        g.add_edge(static_cast<std::size_t>(i), static_cast<std::size_t>(j), w);
    }
    return g;
}

WeightedGraph load_edge_list(std::string_view text) {
    std::istringstream in{std::string(text)};
    return load_edge_list(in);
}

WeightedGraph load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
    return load_edge_list(in);
}

SymmetricMatrix SymmetricMatrix::from_rows(const std::vector<std::vector<double>>& rows, double tol) {
    const std::size_t n = rows.size();
    SymmetricMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) throw Error(ErrorKind::InvalidArgument, "matrix is not square");
        for (std::size_t j = 0; j < n; ++j)
            if (std::abs(rows[i][j] - rows[j][i]) > tol)
                throw Error(ErrorKind::InvalidArgument, "matrix is not symmetric at " + pair_text(i, j));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m.set(i, j, 0.5 * (rows[i][j] + rows[j][i]));
    return m;
}

SymmetricMatrix SymmetricMatrix::diagonal(const std::vector<double>& d) {
    SymmetricMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
    return m;
}

std::vector<double> SymmetricMatrix::apply(const std::vector<double>& x) const {
    std::vector<double> y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n_; ++j) s += a_[i * n_ + j] * x[j];
        y[i] = s;
    }
    return y;
}

double SymmetricMatrix::frobenius() const noexcept {
    double s = 0.0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
}

double SymmetricMatrix::max_abs() const noexcept {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
}

LaplacianMatrix laplacian(const WeightedGraph& g) {
    LaplacianMatrix l(g.node_count());
    for (const auto& e : g.edges()) {
        l.add(e.i, e.i, e.w);
        l.add(e.j, e.j, e.w);
        l.add(e.i, e.j, -e.w);
    }
    return l;
}

bool is_laplacian(const SymmetricMatrix& a) {
    const double tol = 1e-12 * a.max_abs();
    for (std::size_t i = 0; i < a.size(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < a.size(); ++j) {
            row += a(i, j);
            if (i != j && a(i, j) > 0.0) return false;
        }
        if (a(i, i) < 0.0 || std::abs(row) > tol) return false;
    }
    return true;
}

SymmetricEigen symmetric_eigen(const SymmetricMatrix& input, int max_sweeps) {
    const std::size_t n = input.size();
    std::vector<double> a(n * n);
    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        v[i * n + i] = 1.0;
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = input(i, j);
    }
    auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };

    const double target = 1e-12 * input.frobenius();
    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += at(i, j) * at(i, j);
        return std::sqrt(s);
    };

    int sweep = 0;
    while (off_norm() > target) {
        if (sweep++ >= max_sweeps)
            throw Error(ErrorKind::NoConvergence, "Jacobi sweeps exceeded " + std::to_string(max_sweeps));
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
                at(p, q) = 0.0;
                at(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v[k * n + p], vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return at(x, x) < at(y, y); });

    SymmetricEigen out;
    out.values.reserve(n);
    out.vectors.reserve(n);
    for (auto k : order) {
        out.values.push_back(at(k, k));
        std::vector<double> col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = v[i * n + k];
        out.vectors.push_back(std::move(col));
    }
    return out;
}

std::vector<double> symmetric_eigenvalues(const SymmetricMatrix& a, int max_sweeps) {
    return symmetric_eigen(a, max_sweeps).values;
}

SpectralInterval SpectralInterval::make(double lo, double hi) {
    if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi))
        throw Error(ErrorKind::InvalidArgument,
                    "spectral interval needs 0 < lo <= hi, got [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return {lo, hi};
}

SpectralSet::SpectralSet(std::vector<SpectralInterval> intervals, std::vector<double> points) {
    for (const auto& iv : intervals) {
        (void)SpectralInterval::make(iv.lo, iv.hi);
        if (iv.degenerate())
            points.push_back(iv.lo);
        else
            intervals_.push_back(iv);
    }
    std::sort(intervals_.begin(), intervals_.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
    std::vector<SpectralInterval> merged;
    for (const auto& iv : intervals_) {
        if (!merged.empty() && iv.lo <= merged.back().hi)
            merged.back().hi = std::max(merged.back().hi, iv.hi);
        else
            merged.push_back(iv);
    }
    intervals_ = std::move(merged);

    for (double p : points)
        if (!(p > 0.0) || !std::isfinite(p))
            throw Error(ErrorKind::InvalidArgument, "spectral point must be positive, got " + std::to_string(p));
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    for (double p : points) {
        const bool covered = std::any_of(intervals_.begin(), intervals_.end(), [&](const auto& iv) { return iv.contains(p); });
        if (!covered) points_.push_back(p);
    }
}

SpectralSet SpectralSet::parse(std::string_view spec) {
    std::vector<SpectralInterval> intervals;
    std::vector<double> points;
    std::size_t start = 0;
    while (start <= spec.size()) {
        auto end = spec.find(',', start);
        if (end == std::string_view::npos) end = spec.size();
        const auto item = spec.substr(start, end - start);
        const auto colon = item.find(':');
        try {
            if (colon == std::string_view::npos) {
                points.push_back(parse_double(item));
            } else {
                const double lo = parse_double(item.substr(0, colon));
                const double hi = parse_double(item.substr(colon + 1));
                intervals.push_back(SpectralInterval::make(lo, hi));
            }
        } catch (const Error& e) {
            throw Error(ErrorKind::ParseError, "spectral set item '" + std::string(item) + "': " + e.what());
        }
        start = end + 1;
    }
    try {
        return SpectralSet(std::move(intervals), std::move(points));
    } catch (const Error& e) {
        throw Error(ErrorKind::ParseError, std::string("spectral set '") + std::string(spec) + "': " + e.what());
    }
}

bool SpectralSet::contains(double v) const noexcept {
    return std::any_of(intervals_.begin(), intervals_.end(), [&](const auto& iv) { return iv.contains(v); }) ||
           std::find(points_.begin(), points_.end(), v) != points_.end();
}

SpectralInterval SpectralSet::hull() const {
    if (empty()) throw Error(ErrorKind::EmptySet, "hull of an empty spectral set");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& iv : intervals_) {
        lo = std::min(lo, iv.lo);
        hi = std::max(hi, iv.hi);
    }
    for (double p : points_) {
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    return {lo, hi};
}

std::string SpectralSet::to_string() const {
    std::ostringstream os;
    os.precision(12);
    bool first = true;
    for (const auto& iv : intervals_) {
        os << (first ? "" : ",") << iv.lo << ':' << iv.hi;
        first = false;
    }
    for (double p : points_) {
        os << (first ? "" : ",") << p;
        first = false;
    }
    return os.str();
}

SpectralInterval nonzero_spectral_interval(const std::vector<double>& eigs, double zero_tol) {
    auto it = std::find_if(eigs.begin(), eigs.end(), [&](double v) { return v > zero_tol; });
    if (it == eigs.end()) throw Error(ErrorKind::AllZero, "no eigenvalue exceeds " + std::to_string(zero_tol));
    return {*it, eigs.back()};
}

double default_zero_tol(const std::vector<double>& eigs) noexcept {
    double m = 0.0;
    for (double v : eigs) m = std::max(m, std::abs(v));
    return 1e-9 * m;
}

}  // namespace memaccel
