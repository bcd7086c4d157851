#pragma once

// Independent reference implementations used as test oracles. These follow
// the defining formulas directly (double loops, explicit design matrices,
// exhaustive enumeration) and deliberately share no code with the library
// paths they check.

#include "hawkes/binned.hpp"
#include "hawkes/event_stream.hpp"
#include "hawkes/graph.hpp"
#include "hawkes/model.hpp"
#include "hawkes/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

namespace oracle {

/// Romberg-style trapezoid refinement; independent of the library's
/// quadrature. Assumes f is smooth on [a, b].
inline double integrate_smooth(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-11, int max_level = 20) {
    if (!(b > a)) return 0.0;
    double h = b - a;
    // Endpoints nudged inward: pieces are delimited by jump points of
    // right-continuous integrands, so the raw right-endpoint value belongs
    // to the next piece.
    const double nudge = 1e-12 * h;
    double previous = 0.5 * h * (f(a + nudge) + f(b - nudge));
    std::vector<double> row{previous};
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        double sum = 0.0;
        const std::int64_t points = std::int64_t{1} << (level - 1);
        for (std::int64_t i = 0; i < points; ++i) {
            sum += f(a + h * static_cast<double>(2 * i + 1));
        }
        const double trapezoid = 0.5 * row[0] + h * sum;
        std::vector<double> next{trapezoid};
        double factor = 4.0;
        for (std::size_t k = 0; k < row.size(); ++k) {
            next.push_back((factor * next[k] - row[k]) / (factor - 1.0));
            factor *= 4.0;
        }
        if (level > 3 && std::abs(next.back() - row.back()) < tol * (1.0 + std::abs(next.back()))) {
            return next.back();
        }
        row = std::move(next);
    }
    return row.back();
}

/// Integral of a piecewise-smooth function with known breakpoints.
inline double integrate_piecewise(const std::function<double(double)>& f, double a, double b,
                                  std::vector<double> breaks, double tol = 1e-11) {
    breaks.push_back(a);
    breaks.push_back(b);
    std::sort(breaks.begin(), breaks.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double lo = std::max(a, breaks[i]);
        const double hi = std::min(b, breaks[i + 1]);
        if (hi > lo) total += integrate_smooth(f, lo, hi, tol);
    }
    return total;
}

/// The lagged design matrix written out explicitly: row t-k-1 is
/// [Y_{t-1}', ..., Y_{t-k}'] for t = k+1..T (1-based bins).
inline Eigen::MatrixXd design_matrix(const hawkes::BinnedSeries& series, int k) {
    const int d = series.dim();
    const auto T = series.num_bins();
    Eigen::MatrixXd X(T - k, static_cast<Eigen::Index>(k) * d);
    for (std::int64_t t = k + 1; t <= T; ++t) {
        for (int u = 1; u <= k; ++u) {
            for (int j = 0; j < d; ++j) {
                X(t - k - 1, static_cast<Eigen::Index>(u - 1) * d + j) =
                    static_cast<double>(series.counts(j, t - u - 1));
            }
        }
    }
    return X;
}

inline Eigen::MatrixXd response_matrix(const hawkes::BinnedSeries& series, int k) {
    const int d = series.dim();
    const auto T = series.num_bins();
    Eigen::MatrixXd Y(T - k, d);
    for (std::int64_t t = k + 1; t <= T; ++t) {
        for (int i = 0; i < d; ++i) {
            Y(t - k - 1, i) = static_cast<double>(series.counts(i, t - 1));
        }
    }
    return Y;
}

struct CovarianceOracle {
    Eigen::MatrixXd gamma; // d x kd
    Eigen::MatrixXd Gamma; // kd x kd
    Eigen::VectorXd ybar;
    Eigen::VectorXd ybark;
};

/// Sample covariances of (Y_t, X_t) and (X_t, X_t) from the explicit design,
/// centered by their own window means, divisor T_h - k.
inline CovarianceOracle covariance_oracle(const hawkes::BinnedSeries& series, int k) {
    const Eigen::MatrixXd X = design_matrix(series, k);
    const Eigen::MatrixXd Y = response_matrix(series, k);
    const auto Tw = static_cast<double>(X.rows());
    CovarianceOracle out;
    out.ybar = Y.colwise().mean();
    out.ybark = X.colwise().mean();
    const Eigen::MatrixXd Yc = Y.rowwise() - out.ybar.transpose();
    const Eigen::MatrixXd Xc = X.rowwise() - out.ybark.transpose();
    out.gamma = Yc.transpose() * Xc / Tw;
    out.Gamma = Xc.transpose() * Xc / Tw;
    return out;
}

/// Exhaustive search for an unblocked B-pointing path. The path definition
/// puts no distinctness constraint on edges, but any unblocked path that
/// traverses the same edge twice in the same direction can be spliced down
/// to one without that repeat, so enumerating walks that use each directed
/// edge-use (edge, orientation) at most once is exhaustive and terminates.
/// Both orientations of one edge can appear: a path may descend through an
/// edge and bounce back, which is what lets conditioning on a collider's
/// descendant open the route.
///
/// Blocking of each interior vertex is decided as soon as both adjacent
/// steps are known; blocked prefixes cannot become unblocked, so they are
/// abandoned (every completed unblocked walk is still reached).
inline bool noncausal_by_enumeration(const hawkes::CausalityGraph& graph, const std::set<int>& A,
                                     const std::set<int>& B, const std::set<int>& S) {
    std::set<int> blockers;
    for (int v : S) {
        if (A.count(v) == 0) blockers.insert(v);
    }
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : graph.edges) {
        if (e.first != e.second) edges.push_back(e);
    }
    const int m = static_cast<int>(edges.size());
    // used[2e] = traversed along the arrow, used[2e+1] = against it.
    std::vector<bool> used(static_cast<std::size_t>(2 * m), false);

    // Returns true when an unblocked B-pointing walk is found.
    std::function<bool(int, bool)> extend = [&](int vertex, bool arrived_head) -> bool {
        for (int e = 0; e < m; ++e) {
            const auto& [from, to] = edges[static_cast<std::size_t>(e)];
            if (from == vertex && !used[static_cast<std::size_t>(2 * e)]) {
                // vertex is interior non-collider (tail out).
                if (blockers.count(vertex) > 0) continue;
                if (B.count(to) > 0) return true; // arrowhead into B
                used[static_cast<std::size_t>(2 * e)] = true;
                if (extend(to, true)) return true;
                used[static_cast<std::size_t>(2 * e)] = false;
            } else if (to == vertex && !used[static_cast<std::size_t>(2 * e + 1)]) {
                // head out of vertex: collider iff we also arrived via a head.
                const bool pass = arrived_head ? blockers.count(vertex) > 0
                                               : blockers.count(vertex) == 0;
                if (!pass) continue;
                used[static_cast<std::size_t>(2 * e + 1)] = true;
                if (extend(from, false)) return true;
                used[static_cast<std::size_t>(2 * e + 1)] = false;
            }
        }
        return false;
    };

    for (int a : A) {
        for (int e = 0; e < m; ++e) {
            const auto& [from, to] = edges[static_cast<std::size_t>(e)];
            if (from == a) {
                if (B.count(to) > 0) return false; // single-edge path a -> b
                used[static_cast<std::size_t>(2 * e)] = true;
                const bool open = extend(to, true);
                used[static_cast<std::size_t>(2 * e)] = false;
                if (open) return false;
            } else if (to == a) {
                used[static_cast<std::size_t>(2 * e + 1)] = true;
                const bool open = extend(from, false);
                used[static_cast<std::size_t>(2 * e + 1)] = false;
                if (open) return false;
            }
        }
    }
    return true;
}

/// Vertex separation by exhaustive simple-path enumeration.
inline bool separated_by_enumeration(const hawkes::UndirectedGraph& graph, const std::set<int>& A,
                                     const std::set<int>& B, const std::set<int>& C) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(graph.num_vertices) + 1);
    for (const auto& [a, b] : graph.edges) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
    std::vector<bool> on_path(static_cast<std::size_t>(graph.num_vertices) + 1, false);
    std::function<bool(int)> reach = [&](int v) -> bool {
        if (C.count(v) > 0) return false;
        if (B.count(v) > 0) return true;
        on_path[static_cast<std::size_t>(v)] = true;
        for (int w : adj[static_cast<std::size_t>(v)]) {
            if (!on_path[static_cast<std::size_t>(w)] && reach(w)) {
                on_path[static_cast<std::size_t>(v)] = false;
                return true;
            }
        }
        on_path[static_cast<std::size_t>(v)] = false;
        return false;
    };
    for (int a : A) {
        if (reach(a)) return false;
    }
    return true;
}

/// Ancestor sets via transitive closure.
inline std::set<int> ancestors_by_closure(const hawkes::CausalityGraph& graph,
                                          const std::set<int>& B) {
    const int d = graph.num_vertices;
    std::vector<std::vector<bool>> reach(static_cast<std::size_t>(d) + 1,
                                         std::vector<bool>(static_cast<std::size_t>(d) + 1, false));
    for (const auto& [from, to] : graph.edges) {
        if (from != to) reach[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)] = true;
    }
    for (int via = 1; via <= d; ++via) {
        for (int a = 1; a <= d; ++a) {
            for (int b = 1; b <= d; ++b) {
                if (reach[static_cast<std::size_t>(a)][static_cast<std::size_t>(via)] &&
                    reach[static_cast<std::size_t>(via)][static_cast<std::size_t>(b)]) {
                    reach[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = true;
                }
            }
        }
    }
    std::set<int> out;
    for (int a = 1; a <= d; ++a) {
        for (int b : B) {
            if (reach[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) out.insert(a);
        }
    }
    return out;
}

/// Moral graph straight from the definition.
inline hawkes::UndirectedGraph moral_by_definition(const hawkes::CausalityGraph& graph) {
    hawkes::UndirectedGraph moral = hawkes::make_undirected(graph.num_vertices);
    for (int i = 1; i <= graph.num_vertices; ++i) {
        for (int j = i + 1; j <= graph.num_vertices; ++j) {
            bool edge = graph.has_edge(i, j) || graph.has_edge(j, i);
            for (int k = 1; !edge && k <= graph.num_vertices; ++k) {
                if (k != i && k != j && graph.has_edge(i, k) && graph.has_edge(j, k)) edge = true;
            }
            if (edge) hawkes::add_undirected_edge(moral, i, j);
        }
    }
    return moral;
}

/// Random utilities shared by statistical tests.
inline hawkes::EventStream poisson_stream(double rate, double horizon, hawkes::Rng& rng) {
    std::vector<double> times;
    double t = 0.0;
    while (true) {
        t += rng.exponential(rate);
        if (t > horizon) break;
        times.push_back(t);
    }
    return hawkes::EventStream(horizon, {times});
}

inline hawkes::CausalityGraph random_digraph(int d, double edge_prob, hawkes::Rng& rng) {
    hawkes::CausalityGraph g;
    g.num_vertices = d;
    for (int i = 1; i <= d; ++i) {
        for (int j = 1; j <= d; ++j) {
            if (rng.uniform() < edge_prob) g.edges.insert({i, j});
        }
    }
    return g;
}

inline std::set<int> random_subset(int d, double keep_prob, hawkes::Rng& rng) {
    std::set<int> s;
    for (int v = 1; v <= d; ++v) {
        if (rng.uniform() < keep_prob) s.insert(v);
    }
    return s;
}

} // namespace oracle
