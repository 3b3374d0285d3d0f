#include "strata/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

namespace strata {

PointCloud::PointCloud(std::size_t dim, double epsilon) : dim_(dim), epsilon_(epsilon) {}

PointCloud::PointCloud(const std::vector<Coords>& points, double epsilon)
    : dim_(points.empty() ? 0 : points.front().size()), epsilon_(epsilon) {
    coords_.reserve(points.size() * dim_);
    for (const auto& p : points) {
        add(p);
    }
}

void PointCloud::add(std::span<const double> p) {
    if (dim_ == 0 && coords_.empty()) {
        dim_ = p.size();
    }
    if (p.size() != dim_) {
        throw DimensionMismatch("point " + std::to_string(size()) + " has " + std::to_string(p.size()) +
                                " coordinates, expected " + std::to_string(dim_));
    }
    coords_.insert(coords_.end(), p.begin(), p.end());
}

PointCloud PointCloud::subset(std::span<const Index> indices) const {
    PointCloud out(dim_, epsilon_);
    out.coords_.reserve(indices.size() * dim_);
    for (auto i : indices) {
        out.add(point(i));
    }
    return out;
}

AbstractGraph::AbstractGraph(std::size_t vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
    std::set<std::pair<Index, Index>> seen;
    for (const auto& e : edges_) {
        if (e.a >= vertex_count_ || e.b >= vertex_count_) {
            throw InvalidValue("edge (" + std::to_string(e.a) + ", " + std::to_string(e.b) +
                               ") references a vertex outside 0.." + std::to_string(vertex_count_));
        }
        if (e.a == e.b) {
            throw InvalidValue("self-loop at vertex " + std::to_string(e.a));
        }
        if (!seen.emplace(std::min(e.a, e.b), std::max(e.a, e.b)).second) {
            throw InvalidValue("duplicate edge (" + std::to_string(e.a) + ", " + std::to_string(e.b) + ")");
        }
    }
}

bool AbstractGraph::adjacent(Index i, Index j) const {
    return std::any_of(edges_.begin(), edges_.end(), [&](const Edge& e) {
        return (e.a == i && e.b == j) || (e.a == j && e.b == i);
    });
}

std::vector<std::size_t> AbstractGraph::degrees() const {
    std::vector<std::size_t> deg(vertex_count_, 0);
    for (const auto& e : edges_) {
        ++deg[e.a];
        ++deg[e.b];
    }
    return deg;
}

std::vector<std::vector<Index>> AbstractGraph::adjacency() const {
    std::vector<std::vector<Index>> adj(vertex_count_);
    for (const auto& e : edges_) {
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    for (auto& a : adj) {
        std::sort(a.begin(), a.end());
    }
    return adj;
}

EmbeddedGraph::EmbeddedGraph(AbstractGraph graph, std::vector<Coords> positions)
    : graph_(std::move(graph)), positions_(std::move(positions)) {
    if (positions_.size() != graph_.vertex_count()) {
        throw InvalidValue("expected " + std::to_string(graph_.vertex_count()) + " vertex positions, got " +
                           std::to_string(positions_.size()));
    }
    for (Index v = 0; v < positions_.size(); ++v) {
        const auto& p = positions_[v];
        if (p.size() != positions_.front().size() || p.empty()) {
            throw DimensionMismatch("vertex " + std::to_string(v) + " has " + std::to_string(p.size()) +
                                    " coordinates");
        }
        if (!std::all_of(p.begin(), p.end(), [](double x) { return std::isfinite(x); })) {
            throw InvalidValue("non-finite coordinate at vertex " + std::to_string(v));
        }
    }
    std::vector<Index> order(positions_.size());
    std::iota(order.begin(), order.end(), Index{0});
    std::sort(order.begin(), order.end(), [&](Index a, Index b) { return positions_[a] < positions_[b]; });
    for (Index k = 1; k < order.size(); ++k) {
        if (positions_[order[k]] == positions_[order[k - 1]]) {
            throw InvalidValue("vertices " + std::to_string(order[k - 1]) + " and " + std::to_string(order[k]) +
                               " share a position");
        }
    }
}

AbstractGraph Stratification::graph() const {
    std::vector<Edge> edges;
    edges.reserve(incidence.size());
    for (const auto& [a, b] : incidence) {
        edges.push_back({a, b});
    }
    return AbstractGraph(vertex_clusters.size(), std::move(edges));
}

void check_stratification(const Stratification& s, std::size_t point_count) {
    if (s.labels.size() != point_count) {
        throw InvalidValue("stratification has " + std::to_string(s.labels.size()) + " labels for " +
                           std::to_string(point_count) + " points");
    }
    if (s.incidence.size() != s.edge_clusters.size()) {
        throw InvalidValue("every edge cluster needs exactly one incidence pair");
    }
    std::vector<int> seen(point_count, 0);
    auto mark = [&](const std::vector<Cluster>& clusters, int dim, const char* what) {
        for (Index c = 0; c < clusters.size(); ++c) {
            if (clusters[c].empty()) {
                throw InvalidValue(std::string(what) + " cluster " + std::to_string(c) + " is empty");
            }
            for (auto i : clusters[c]) {
                if (i >= point_count) {
                    throw InvalidValue(std::string(what) + " cluster " + std::to_string(c) +
                                       " references point " + std::to_string(i));
                }
                if (seen[i]++ != 0) {
                    throw InvalidValue("point " + std::to_string(i) + " appears in more than one cluster");
                }
                if (s.labels[i] != dim) {
                    throw InvalidValue("point " + std::to_string(i) + " is in a " + what +
                                       " cluster but labeled " + std::to_string(s.labels[i]));
                }
            }
        }
    };
    mark(s.vertex_clusters, 0, "vertex");
    mark(s.edge_clusters, 1, "edge");
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
        throw InvalidValue("clusters do not cover every point");
    }
    for (Index e = 0; e < s.incidence.size(); ++e) {
        auto [a, b] = s.incidence[e];
        if (a == b || a >= s.vertex_clusters.size() || b >= s.vertex_clusters.size()) {
            throw InvalidValue("edge cluster " + std::to_string(e) + " has an invalid incidence pair");
        }
    }
}

ValidationReport validate_cloud(const PointCloud& cloud) {
    ValidationReport report;
    if (!(cloud.epsilon() > 0.0) || !std::isfinite(cloud.epsilon())) {
        report.findings.emplace_back("epsilon must be positive");
    }
    if (cloud.dim() == 0 && !cloud.empty()) {
        report.findings.emplace_back("ambient dimension must be at least 1");
    }
    for (Index i = 0; i < cloud.size(); ++i) {
        auto p = cloud.point(i);
        if (!std::all_of(p.begin(), p.end(), [](double x) { return std::isfinite(x); })) {
            report.findings.push_back("non-finite coordinate at index " + std::to_string(i));
        }
    }
    std::vector<Index> order(cloud.size());
    std::iota(order.begin(), order.end(), Index{0});
    auto less = [&](Index a, Index b) {
        auto pa = cloud.point(a);
        auto pb = cloud.point(b);
        return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
    };
    std::sort(order.begin(), order.end(), less);
    for (Index k = 1; k < order.size(); ++k) {
        auto pa = cloud.point(order[k - 1]);
        auto pb = cloud.point(order[k]);
        if (std::equal(pa.begin(), pa.end(), pb.begin())) {
            report.warnings.push_back("duplicate point at indices " + std::to_string(std::min(order[k - 1], order[k])) +
                                      " and " + std::to_string(std::max(order[k - 1], order[k])));
        }
    }
    return report;
}

void require_valid(const PointCloud& cloud) {
    auto report = validate_cloud(cloud);
    if (!report.valid()) {
        throw InvalidValue("invalid point cloud: " + report.findings.front());
    }
    if (cloud.empty()) {
        throw InvalidValue("invalid point cloud: no points");
    }
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        double d = a[k] - b[k];
        s += d * d;
    }
    return s;
}

double distance(std::span<const double> a, std::span<const double> b) { return std::sqrt(squared_distance(a, b)); }

}  // namespace strata
