// Shared fixtures and brute-force oracles for the test suites. The oracles
// deliberately avoid the library's grid index, union-find and projection
// code so they can check it independently.
#ifndef STRATA_TESTS_SUPPORT_HPP
#define STRATA_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <vector>

#include "strata/core.hpp"

namespace strata::testing {

/// The five-vertex test graph: a pendant edge 0-1, a triangle 1-2-3 and an
/// isolated vertex 4. Side lengths 40 epsilon at epsilon = 0.1, smallest
/// angle 60 degrees.
inline EmbeddedGraph section4_graph_2d() {
    const double h = 2.0 * std::sqrt(3.0);
    return EmbeddedGraph(AbstractGraph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 1}}),
                         {{-4.0, 0.0}, {0.0, 0.0}, {h, -2.0}, {h, 2.0}, {-4.0, 4.0}});
}

/// Same abstract graph in R^3 with the triangle tilted out of the plane of
/// the pendant edge.
inline EmbeddedGraph section4_graph_3d() {
    return EmbeddedGraph(AbstractGraph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 1}}),
                         {{-4.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {3.0, -2.0, 2.0}, {3.0, 2.0, 2.0}, {-3.0, 4.0, -3.0}});
}

/// Hub at the origin with three spokes of length `length` at 0, 120, 240 degrees.
inline EmbeddedGraph star_graph(double length = 4.0) {
    std::vector<Coords> pos = {{0.0, 0.0}};
    for (int k = 0; k < 3; ++k) {
        double a = 2.0 * std::numbers::pi * k / 3.0;
        pos.push_back({length * std::cos(a), length * std::sin(a)});
    }
    return EmbeddedGraph(AbstractGraph(4, {{0, 1}, {0, 2}, {0, 3}}), pos);
}

inline EmbeddedGraph segment_graph(Coords a = {0.0, 0.0}, Coords b = {4.0, 0.0}) {
    return EmbeddedGraph(AbstractGraph(2, {{0, 1}}), {std::move(a), std::move(b)});
}

/// Points at `spacing` along rays from `origin` in the given unit
/// directions, out to `reach`; the origin is included once.
inline PointCloud rays_cloud(const std::vector<Coords>& directions, double spacing, int steps, double epsilon,
                             Coords origin = {0.0, 0.0}) {
    PointCloud cloud(origin.size(), epsilon);
    cloud.add(origin);
    for (const auto& d : directions) {
        for (int k = 1; k <= steps; ++k) {
            Coords p = origin;
            for (std::size_t c = 0; c < p.size(); ++c) {
                p[c] += spacing * k * d[c];
            }
            cloud.add(p);
        }
    }
    return cloud;
}

inline Coords unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

inline PointCloud uniform_cloud(std::size_t n, std::size_t dim, double epsilon, std::uint64_t seed,
                                double extent = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, extent);
    PointCloud cloud(dim, epsilon);
    Coords p(dim);
    for (std::size_t i = 0; i < n; ++i) {
        for (auto& x : p) {
            x = u(rng);
        }
        cloud.add(p);
    }
    return cloud;
}

/// Rigid motion in the plane applied to every point (and epsilon kept).
inline PointCloud rotate_translate(const PointCloud& cloud, double angle, Coords shift) {
    PointCloud out(cloud.dim(), cloud.epsilon());
    for (Index i = 0; i < cloud.size(); ++i) {
        auto p = cloud.point(i);
        Coords q(p.begin(), p.end());
        q[0] = std::cos(angle) * p[0] - std::sin(angle) * p[1] + shift[0];
        q[1] = std::sin(angle) * p[0] + std::cos(angle) * p[1] + shift[1];
        for (std::size_t c = 2; c < q.size(); ++c) {
            q[c] += shift[c];
        }
        out.add(q);
    }
    return out;
}

// ---- oracles -------------------------------------------------------------

inline double oracle_dist2(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        s += (a[k] - b[k]) * (a[k] - b[k]);
    }
    return s;
}

/// All-pairs threshold adjacency.
inline std::vector<std::vector<Index>> all_pairs_adjacency(const PointCloud& cloud, double r) {
    std::vector<std::vector<Index>> adj(cloud.size());
    for (Index i = 0; i < cloud.size(); ++i) {
        for (Index j = 0; j < cloud.size(); ++j) {
            if (i != j && oracle_dist2(cloud.point(i), cloud.point(j)) <= r * r) {
                adj[i].push_back(j);
            }
        }
    }
    return adj;
}

inline std::vector<Index> linear_scan(const PointCloud& cloud, std::span<const double> q, double r) {
    std::vector<Index> out;
    for (Index i = 0; i < cloud.size(); ++i) {
        if (oracle_dist2(cloud.point(i), q) <= r * r) {
            out.push_back(i);
        }
    }
    return out;
}

/// Components of `subset` joined at distance <= r, by breadth-first search
/// over all pairs. Returned as sorted clusters ordered by smallest member.
inline std::vector<Cluster> bfs_components(const PointCloud& cloud, std::vector<Index> subset, double r) {
    std::sort(subset.begin(), subset.end());
    std::vector<bool> seen(subset.size(), false);
    std::vector<Cluster> out;
    for (std::size_t s = 0; s < subset.size(); ++s) {
        if (seen[s]) {
            continue;
        }
        Cluster c;
        std::queue<std::size_t> todo;
        todo.push(s);
        seen[s] = true;
        while (!todo.empty()) {
            auto k = todo.front();
            todo.pop();
            c.push_back(subset[k]);
            for (std::size_t m = 0; m < subset.size(); ++m) {
                if (!seen[m] && oracle_dist2(cloud.point(subset[k]), cloud.point(subset[m])) <= r * r) {
                    seen[m] = true;
                    todo.push(m);
                }
            }
        }
        std::sort(c.begin(), c.end());
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const Cluster& a, const Cluster& b) { return a.front() < b.front(); });
    return out;
}

/// Minimizer of |p - (t a + (1-t) b)|^2 over t in {0, step, 2 step, ..., 1}.
inline std::pair<double, double> theta_grid(std::span<const double> p, std::span<const double> a,
                                            std::span<const double> b, double step = 1e-3) {
    double best_t = 0.0;
    double best = std::numeric_limits<double>::infinity();
    const int n = static_cast<int>(std::lround(1.0 / step));
    for (int k = 0; k <= n; ++k) {
        double t = static_cast<double>(k) / n;
        double d = 0.0;
        for (std::size_t c = 0; c < p.size(); ++c) {
            double r = p[c] - t * a[c] - (1.0 - t) * b[c];
            d += r * r;
        }
        if (d < best) {
            best = d;
            best_t = t;
        }
    }
    return {best_t, best};
}

/// Exhaustive isomorphism test over all n! permutations.
inline bool permutation_isomorphic(const AbstractGraph& g1, const AbstractGraph& g2) {
    if (g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count()) {
        return false;
    }
    std::vector<Index> perm(g1.vertex_count());
    std::iota(perm.begin(), perm.end(), Index{0});
    do {
        bool ok = true;
        for (const auto& e : g1.edges()) {
            if (!g2.adjacent(perm[e.a], perm[e.b])) {
                ok = false;
                break;
            }
        }
        if (ok) {
            return true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

/// Random simple graph on n vertices with edge probability p.
inline AbstractGraph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            if (coin(rng)) {
                edges.push_back({i, j});
            }
        }
    }
    return AbstractGraph(n, edges);
}

inline AbstractGraph relabel(const AbstractGraph& g, const std::vector<Index>& perm) {
    std::vector<Edge> edges;
    for (const auto& e : g.edges()) {
        edges.push_back({perm[e.a], perm[e.b]});
    }
    return AbstractGraph(g.vertex_count(), edges);
}

/// Central finite difference of f at x along every coordinate.
inline std::vector<double> finite_difference(const std::function<double(const std::vector<double>&)>& f,
                                             std::vector<double> x, double h = 1e-6) {
    std::vector<double> g(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double keep = x[k];
        x[k] = keep + h;
        const double up = f(x);
        x[k] = keep - h;
        const double down = f(x);
        x[k] = keep;
        g[k] = (up - down) / (2.0 * h);
    }
    return g;
}

/// Distance from p to the segment [a, b] by ternary search on the convex
/// function t -> |p - (t a + (1-t) b)|.
inline double segment_distance_oracle(std::span<const double> p, std::span<const double> a,
                                      std::span<const double> b) {
    auto f = [&](double t) {
        double d = 0.0;
        for (std::size_t c = 0; c < p.size(); ++c) {
            double r = p[c] - t * a[c] - (1.0 - t) * b[c];
            d += r * r;
        }
        return d;
    };
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        double m1 = lo + (hi - lo) / 3.0;
        double m2 = hi - (hi - lo) / 3.0;
        if (f(m1) < f(m2)) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    return std::sqrt(std::min({f(0.0), f(1.0), f((lo + hi) / 2.0)}));
}

}  // namespace strata::testing

#endif
