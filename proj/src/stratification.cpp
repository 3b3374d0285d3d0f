#include "strata/stratification.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace strata {

namespace {

std::string join(const std::vector<Index>& ids) {
    std::string s = "{";
    for (std::size_t k = 0; k < ids.size(); ++k) {
        s += (k ? ", " : "") + std::to_string(ids[k]);
    }
    return s + "}";
}

std::vector<Index> with_label(const DimensionLabels& labels, int dim) {
    std::vector<Index> out;
    for (Index i = 0; i < labels.size(); ++i) {
        if (labels[i] == dim) {
            out.push_back(i);
        }
    }
    return out;
}

}  // namespace

IncidenceError::IncidenceError(Index edge_cluster, std::vector<Index> touching, const std::string& reason)
    : std::runtime_error("edge cluster " + std::to_string(edge_cluster) + " touches vertex clusters " +
                         join(touching) + ": " + reason),
      edge_cluster_(edge_cluster),
      touching_(std::move(touching)) {}

std::vector<Cluster> threshold_clusters(const NeighborhoodGraph& graph, std::span<const Index> subset,
                                        double threshold) {
    if (threshold <= graph.radius()) {
        return components(graph, subset, threshold).groups();
    }
    const auto& cloud = graph.cloud();
    std::vector<Index> members(subset.begin(), subset.end());
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    GridIndex index(cloud, threshold, members);

    DisjointSets sets(members.size());
    for (std::size_t k = 0; k < members.size(); ++k) {
        for (auto j : index.radius_query(cloud.point(members[k]), threshold)) {
            if (j > members[k]) {
                sets.unite(k, std::lower_bound(members.begin(), members.end(), j) - members.begin());
            }
        }
    }
    std::map<std::size_t, Cluster> by_root;
    for (std::size_t k = 0; k < members.size(); ++k) {
        by_root[sets.find(k)].push_back(members[k]);
    }
    std::vector<Cluster> out;
    for (auto& [root, c] : by_root) {
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const Cluster& a, const Cluster& b) { return a.front() < b.front(); });
    return out;
}

std::vector<Cluster> cluster_vertices(const NeighborhoodGraph& graph, const DimensionLabels& labels,
                                      double threshold) {
    if (labels.size() != graph.size()) {
        throw InvalidValue("label count does not match the cloud");
    }
    return threshold_clusters(graph, with_label(labels, 0), threshold);
}

std::vector<Cluster> cluster_edges(const NeighborhoodGraph& graph, const DimensionLabels& labels, double threshold) {
    if (labels.size() != graph.size()) {
        throw InvalidValue("label count does not match the cloud");
    }
    return threshold_clusters(graph, with_label(labels, 1), threshold);
}

Incidence assign_incidence(const PointCloud& cloud, const std::vector<Cluster>& vertex_clusters,
                           const std::vector<Cluster>& edge_clusters, double link_threshold) {
    std::vector<Index> vertex_points;
    std::vector<Index> owner(cloud.size(), vertex_clusters.size());
    for (Index c = 0; c < vertex_clusters.size(); ++c) {
        for (auto i : vertex_clusters[c]) {
            vertex_points.push_back(i);
            owner[i] = c;
        }
    }
    GridIndex index(cloud, link_threshold, std::move(vertex_points));

    Incidence out;
    std::map<std::pair<Index, Index>, Index> first_cluster;
    std::vector<Edge> edges;
    for (Index e = 0; e < edge_clusters.size(); ++e) {
        std::set<Index> touching;
        for (auto i : edge_clusters[e]) {
            for (auto j : index.radius_query(cloud.point(i), link_threshold)) {
                touching.insert(owner[j]);
            }
        }
        std::vector<Index> ids(touching.begin(), touching.end());
        if (ids.size() != 2) {
            throw IncidenceError(e, std::move(ids), "expected exactly 2 bounding vertex clusters");
        }
        auto pair = std::make_pair(ids[0], ids[1]);
        if (auto [it, fresh] = first_cluster.emplace(pair, e); !fresh) {
            throw IncidenceError(e, std::move(ids),
                                 "same vertex pair as edge cluster " + std::to_string(it->second));
        }
        out.pairs.push_back(pair);
        edges.push_back({pair.first, pair.second});
    }
    out.graph = AbstractGraph(vertex_clusters.size(), std::move(edges));
    return out;
}

ReconstructionParams ReconstructionParams::for_epsilon(double epsilon) {
    ReconstructionParams p;
    p.classifier = ClassifierParams::for_epsilon(epsilon);
    p.graph_radius = 3.0 * epsilon;
    p.vertex_threshold = 10.0 * epsilon;
    p.edge_threshold = 3.0 * epsilon;
    p.link_threshold = 3.0 * epsilon;
    return p;
}

Stratification reconstruct(const PointCloud& cloud, const ReconstructionParams& params) {
    auto graph = build_graph(cloud, params.graph_radius);
    Stratification s;
    s.labels = classify_all(graph, params.classifier);
    s.vertex_clusters = cluster_vertices(graph, s.labels, params.vertex_threshold);
    s.edge_clusters = cluster_edges(graph, s.labels, params.edge_threshold);
    s.incidence = assign_incidence(cloud, s.vertex_clusters, s.edge_clusters, params.link_threshold).pairs;
    return s;
}

Stratification reconstruct(const PointCloud& cloud) {
    return reconstruct(cloud, ReconstructionParams::for_epsilon(cloud.epsilon()));
}

}  // namespace strata
