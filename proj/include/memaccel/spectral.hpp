#pragma once

// Graphs, Laplacians, dense symmetric eigenvalues and the eigenvalue sets that
// gain tunings are certified against.

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace memaccel {

struct Edge {
    std::size_t i = 0;
    std::size_t j = 0;
    double w = 0.0;
};

/// Undirected weighted graph; each unordered pair is stored at most once.
class WeightedGraph {
public:
    WeightedGraph() = default;
    explicit WeightedGraph(std::size_t n) : n_(n) {}

    /// Throws InvalidArgument (bad index / self loop), NegativeWeight or DuplicateEdge.
    void add_edge(std::size_t i, std::size_t j, double w);

    [[nodiscard]] std::size_t node_count() const noexcept { return n_; }
    [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }
    [[nodiscard]] bool has_edge(std::size_t i, std::size_t j) const noexcept;

    /// Copy with the listed unordered pairs removed (weights set to zero).
    [[nodiscard]] WeightedGraph without(const std::vector<std::pair<std::size_t, std::size_t>>& dropped) const;

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
};

/// Parses "i j w" lines (0-based indices, '#' comments, blank lines ignored).
/// The node count is one past the largest index seen.
[[nodiscard]] WeightedGraph load_edge_list(std::istream& in);
[[nodiscard]] WeightedGraph load_edge_list(std::string_view text);
[[nodiscard]] WeightedGraph load_edge_list_file(const std::string& path);

/// Dense symmetric storage; writes go to both triangles so symmetry is exact.
class SymmetricMatrix {
public:
    SymmetricMatrix() = default;
    explicit SymmetricMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}
    /// Throws InvalidArgument unless rows form a square matrix symmetric within tol.
    static SymmetricMatrix from_rows(const std::vector<std::vector<double>>& rows, double tol = 1e-12);
    static SymmetricMatrix diagonal(const std::vector<double>& d);

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * n_ + j]; }
    void set(std::size_t i, std::size_t j, double v) noexcept {
        a_[i * n_ + j] = v;
        a_[j * n_ + i] = v;
    }
    void add(std::size_t i, std::size_t j, double v) noexcept {
        a_[i * n_ + j] += v;
        if (i != j) a_[j * n_ + i] += v;
    }

    [[nodiscard]] std::vector<double> apply(const std::vector<double>& x) const;
    [[nodiscard]] double frobenius() const noexcept;
    [[nodiscard]] double max_abs() const noexcept;

private:
    std::size_t n_ = 0;
    std::vector<double> a_;
};

using LaplacianMatrix = SymmetricMatrix;

/// L_jj = sum_k w_jk, L_jk = -w_jk.
[[nodiscard]] LaplacianMatrix laplacian(const WeightedGraph& g);

/// True when A has nonpositive off-diagonals, nonnegative diagonal and zero
/// row sums (within 1e-12 * max|A_ij|).
[[nodiscard]] bool is_laplacian(const SymmetricMatrix& a);

struct SymmetricEigen {
    std::vector<double> values;                // ascending
    std::vector<std::vector<double>> vectors;  // vectors[k] pairs with values[k], unit norm
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm falls below
/// 1e-12 * ||A||_F. Throws NoConvergence after the sweep budget.
[[nodiscard]] SymmetricEigen symmetric_eigen(const SymmetricMatrix& a, int max_sweeps = 100);
[[nodiscard]] std::vector<double> symmetric_eigenvalues(const SymmetricMatrix& a, int max_sweeps = 100);

/// Closed interval [lo, hi] with 0 < lo <= hi.
struct SpectralInterval {
    double lo = 0.0;
    double hi = 0.0;

    /// Throws InvalidArgument on violation of 0 < lo <= hi.
    static SpectralInterval make(double lo, double hi);
    [[nodiscard]] bool degenerate() const noexcept { return lo == hi; }
    [[nodiscard]] bool contains(double v) const noexcept { return lo <= v && v <= hi; }
};

/// Union of closed intervals and isolated points in (0, inf), kept canonical:
/// sorted, overlapping intervals merged, collapsed intervals turned into points
/// and points already covered by an interval dropped.
class SpectralSet {
public:
    SpectralSet() = default;
    SpectralSet(std::vector<SpectralInterval> intervals, std::vector<double> points);
    static SpectralSet interval(double lo, double hi) { return SpectralSet({SpectralInterval::make(lo, hi)}, {}); }

    /// "lo:hi" items and bare "v" points separated by commas, e.g. "0.0122:0.0182,0.9878".
    static SpectralSet parse(std::string_view spec);

    [[nodiscard]] const std::vector<SpectralInterval>& intervals() const noexcept { return intervals_; }
    [[nodiscard]] const std::vector<double>& points() const noexcept { return points_; }
    [[nodiscard]] bool empty() const noexcept { return intervals_.empty() && points_.empty(); }
    [[nodiscard]] bool contains(double v) const noexcept;
    /// Smallest interval containing the whole set. Throws EmptySet.
    [[nodiscard]] SpectralInterval hull() const;
    [[nodiscard]] std::string to_string() const;

private:
    std::vector<SpectralInterval> intervals_;
    std::vector<double> points_;
};

/// [smallest eigenvalue > zero_tol, largest eigenvalue]; eigenvalues at or
/// below zero_tol are the fixed-point (consensus) modes. Throws AllZero.
[[nodiscard]] SpectralInterval nonzero_spectral_interval(const std::vector<double>& eigs, double zero_tol);

/// The default zero tolerance: 1e-9 relative to the largest |eigenvalue|.
[[nodiscard]] double default_zero_tol(const std::vector<double>& eigs) noexcept;

}  // namespace memaccel
