#include "strata/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "strata/sampler.hpp"

namespace strata {

double hausdorff(const std::vector<Coords>& a, const std::vector<Coords>& b) {
    if (a.empty() || b.empty()) {
        throw InvalidValue("Hausdorff distance of an empty set");
    }
    for (const auto* set : {&a, &b}) {
        for (const auto& p : *set) {
            if (p.size() != a.front().size()) {
                throw DimensionMismatch("point sets mix dimensions");
            }
        }
    }
    auto directed = [](const std::vector<Coords>& from, const std::vector<Coords>& to) {
        double worst = 0.0;
        for (const auto& p : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& q : to) {
                best = std::min(best, squared_distance(p, q));
            }
            worst = std::max(worst, best);
        }
        return std::sqrt(worst);
    };
    return std::max(directed(a, b), directed(b, a));
}

namespace {

using Matrix = std::vector<std::vector<char>>;

Matrix adjacency_matrix(const AbstractGraph& g) {
    Matrix m(g.vertex_count(), std::vector<char>(g.vertex_count(), 0));
    for (const auto& e : g.edges()) {
        m[e.a][e.b] = m[e.b][e.a] = 1;
    }
    return m;
}

/**
 * Depth-first search over partial bijections g1 -> g2 that preserve
 * adjacency among the vertices mapped so far. `visit` gets each complete
 * mapping and returns false to stop; `prune(v, w, mapping)` may veto
 * extending with v -> w.
 */
class Matcher {
public:
    Matcher(const AbstractGraph& g1, const AbstractGraph& g2) : g1_(g1), g2_(g2) {
        for (const auto* g : {&g1, &g2}) {
            if (g->vertex_count() > max_isomorphism_vertices) {
                throw UnsupportedSize("isomorphism search supports at most " +
                                      std::to_string(max_isomorphism_vertices) + " vertices");
            }
        }
        a1_ = adjacency_matrix(g1);
        a2_ = adjacency_matrix(g2);
        d1_ = g1.degrees();
        d2_ = g2.degrees();
    }

    void run(const std::function<bool(const VertexMapping&)>& visit,
             const std::function<bool(Index, Index, const VertexMapping&)>& prune = {}) {
        if (g1_.vertex_count() != g2_.vertex_count() || g1_.edge_count() != g2_.edge_count()) {
            return;
        }
        auto s1 = d1_;
        auto s2 = d2_;
        std::sort(s1.begin(), s1.end());
        std::sort(s2.begin(), s2.end());
        if (s1 != s2) {
            return;
        }
        // Highest degree first constrains the search early.
        order_.resize(g1_.vertex_count());
        std::iota(order_.begin(), order_.end(), Index{0});
        std::stable_sort(order_.begin(), order_.end(), [&](Index a, Index b) { return d1_[a] > d1_[b]; });
        mapping_.assign(g1_.vertex_count(), none);
        used_.assign(g2_.vertex_count(), false);
        visit_ = &visit;
        prune_ = prune ? &prune : nullptr;
        extend(0);
    }

private:
    static constexpr Index none = std::numeric_limits<Index>::max();

    bool extend(std::size_t depth) {
        if (depth == order_.size()) {
            return (*visit_)(mapping_);
        }
        const Index v = order_[depth];
        for (Index w = 0; w < g2_.vertex_count(); ++w) {
            if (used_[w] || d2_[w] != d1_[v]) {
                continue;
            }
            bool consistent = true;
            for (std::size_t k = 0; k < depth && consistent; ++k) {
                const Index u = order_[k];
                consistent = a1_[u][v] == a2_[mapping_[u]][w];
            }
            if (!consistent || (prune_ && (*prune_)(v, w, mapping_))) {
                continue;
            }
            mapping_[v] = w;
            used_[w] = true;
            bool go_on = extend(depth + 1);
            used_[w] = false;
            mapping_[v] = none;
            if (!go_on) {
                return false;
            }
        }
        return true;
    }

    const AbstractGraph& g1_;
    const AbstractGraph& g2_;
    Matrix a1_;
    Matrix a2_;
    std::vector<std::size_t> d1_;
    std::vector<std::size_t> d2_;
    std::vector<Index> order_;
    VertexMapping mapping_;
    std::vector<bool> used_;
    const std::function<bool(const VertexMapping&)>* visit_ = nullptr;
    const std::function<bool(Index, Index, const VertexMapping&)>* prune_ = nullptr;
};

bool preserves_edges(const AbstractGraph& g1, const AbstractGraph& g2, const VertexMapping& m) {
    if (m.size() != g1.vertex_count() || g1.vertex_count() != g2.vertex_count() ||
        g1.edge_count() != g2.edge_count()) {
        return false;
    }
    std::vector<bool> hit(g2.vertex_count(), false);
    for (auto w : m) {
        if (w >= g2.vertex_count() || hit[w]) {
            return false;
        }
        hit[w] = true;
    }
    return std::all_of(g1.edges().begin(), g1.edges().end(),
                       [&](const Edge& e) { return g2.adjacent(m[e.a], m[e.b]); });
}

}  // namespace

std::optional<VertexMapping> graph_isomorphic(const AbstractGraph& g1, const AbstractGraph& g2) {
    std::optional<VertexMapping> found;
    Matcher(g1, g2).run([&](const VertexMapping& m) {
        found = m;
        return false;
    });
    if (found && !preserves_edges(g1, g2, *found)) {
        throw std::logic_error("isomorphism search returned a mapping that does not preserve edges");
    }
    return found;
}

std::vector<VertexMapping> all_isomorphisms(const AbstractGraph& g1, const AbstractGraph& g2) {
    std::vector<VertexMapping> out;
    Matcher(g1, g2).run([&](const VertexMapping& m) {
        out.push_back(m);
        return true;
    });
    std::sort(out.begin(), out.end());
    return out;
}

VertexError vertex_error(const EmbeddedGraph& fitted, const EmbeddedGraph& truth) {
    if (fitted.dim() != truth.dim()) {
        throw DimensionMismatch("fitted and true graphs have different ambient dimensions");
    }
    const std::size_t n = fitted.graph().vertex_count();
    std::vector<std::vector<double>> cost(n, std::vector<double>(truth.graph().vertex_count()));
    for (Index v = 0; v < n; ++v) {
        for (Index w = 0; w < cost[v].size(); ++w) {
            cost[v][w] = distance(fitted.position(v), truth.position(w));
        }
    }

    std::optional<VertexError> best;
    auto score = [&](const VertexMapping& m) {
        VertexError e;
        e.mapping = m;
        for (Index v = 0; v < n; ++v) {
            e.per_vertex.push_back(cost[v][m[v]]);
            e.max_error = std::max(e.max_error, cost[v][m[v]]);
            e.mean_error += cost[v][m[v]];
        }
        e.mean_error = n ? e.mean_error / static_cast<double>(n) : 0.0;
        return e;
    };
    Matcher(fitted.graph(), truth.graph())
        .run(
            [&](const VertexMapping& m) {
                auto e = score(m);
                if (!best || e.max_error < best->max_error ||
                    (e.max_error == best->max_error && e.mean_error < best->mean_error)) {
                    best = std::move(e);
                }
                return true;
            },
            [&](Index v, Index w, const VertexMapping&) { return best && cost[v][w] > best->max_error; });
    if (!best) {
        throw NotIsomorphic("fitted graph is not isomorphic to the reference graph");
    }
    return *best;
}

EvaluationReport evaluate(const EmbeddedGraph& fitted, const EmbeddedGraph& truth, const PointCloud* cloud) {
    EvaluationReport report;
    report.isomorphic = graph_isomorphic(fitted.graph(), truth.graph()).has_value();
    if (report.isomorphic) {
        auto err = vertex_error(fitted, truth);
        report.max_vertex_error = err.max_error;
        report.mean_vertex_error = err.mean_error;
    }
    if (cloud != nullptr && !cloud->empty() && fitted.graph().vertex_count() > 0) {
        report.hausdorff_sample_to_model = validate_epsilon_sample(*cloud, fitted, cloud->epsilon()).hausdorff_bound();
    }
    return report;
}

}  // namespace strata
