#ifndef STRATA_STRATIFICATION_HPP
#define STRATA_STRATIFICATION_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "strata/core.hpp"
#include "strata/dimension_classifier.hpp"
#include "strata/neighborhood_graph.hpp"

namespace strata {

/// An edge cluster is not bounded by exactly two distinct vertex clusters,
/// or two edge clusters share the same pair.
class IncidenceError : public std::runtime_error {
public:
    IncidenceError(Index edge_cluster, std::vector<Index> touching, const std::string& reason);

    Index edge_cluster() const { return edge_cluster_; }
    /// Vertex clusters within the link threshold of the edge cluster.
    const std::vector<Index>& touching() const { return touching_; }

private:
    Index edge_cluster_;
    std::vector<Index> touching_;
};

/**
 * Connected components of `subset` where points within `threshold` of each
 * other are joined. Uses `graph` when threshold <= graph.radius(), else a
 * dedicated grid index. Clusters are sorted and ordered by smallest member.
 */
std::vector<Cluster> threshold_clusters(const NeighborhoodGraph& graph, std::span<const Index> subset,
                                        double threshold);

/// Components of the dimension-0 points at `threshold` (10 epsilon by default).
std::vector<Cluster> cluster_vertices(const NeighborhoodGraph& graph, const DimensionLabels& labels, double threshold);

/// Components of the dimension-1 points at `threshold` (3 epsilon by default).
std::vector<Cluster> cluster_edges(const NeighborhoodGraph& graph, const DimensionLabels& labels, double threshold);

struct Incidence {
    AbstractGraph graph;
    /// Per edge cluster, its two vertex clusters, smaller id first.
    std::vector<std::pair<Index, Index>> pairs;
};

/// For each edge cluster, the vertex clusters with a point within
/// link_threshold of one of its points; exactly two are required.
/// Throws IncidenceError otherwise.
Incidence assign_incidence(const PointCloud& cloud, const std::vector<Cluster>& vertex_clusters,
                           const std::vector<Cluster>& edge_clusters, double link_threshold);

struct ReconstructionParams {
    ClassifierParams classifier;
    /// Radius of the base neighborhood graph.
    double graph_radius = 0.0;
    double vertex_threshold = 0.0;
    double edge_threshold = 0.0;
    double link_threshold = 0.0;

    /// graph 3e, vertices 10e, edges 3e, incidence 3e.
    static ReconstructionParams for_epsilon(double epsilon);
};

/// Graph construction, dimension labels, clustering and incidence in one call.
Stratification reconstruct(const PointCloud& cloud, const ReconstructionParams& params);
Stratification reconstruct(const PointCloud& cloud);

}  // namespace strata

#endif
