#ifndef STRATA_CORE_HPP
#define STRATA_CORE_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace strata {

using Index = std::size_t;
using Coords = std::vector<double>;

/// Thrown when a value violates the invariants of its type.
class InvalidValue : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when coordinate vectors of different lengths are mixed.
class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/**
 * A finite sample of points in R^n together with the noise/density bound
 * epsilon it was drawn with. Coordinates are stored row-major in one buffer.
 *
 * Construction only checks shape (every point has `dim` coordinates); use
 * validate_cloud() for the full set of checks, which reports instead of
 * throwing.
 */
class PointCloud {
public:
    PointCloud() = default;
    PointCloud(std::size_t dim, double epsilon);
    PointCloud(const std::vector<Coords>& points, double epsilon);

    void add(std::span<const double> p);

    std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
    bool empty() const { return coords_.empty(); }
    std::size_t dim() const { return dim_; }
    double epsilon() const { return epsilon_; }

    std::span<const double> point(Index i) const {
        return {coords_.data() + i * dim_, dim_};
    }
    std::span<const double> raw() const { return coords_; }

    /// Copy of the points listed in `indices`, in that order, same epsilon.
    PointCloud subset(std::span<const Index> indices) const;

    friend bool operator==(const PointCloud&, const PointCloud&) = default;

private:
    std::size_t dim_ = 0;
    double epsilon_ = 0.0;
    std::vector<double> coords_;
};

struct Edge {
    Index a = 0;
    Index b = 0;
    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Vertices 0..vertex_count-1 and unordered edges; no self-loops, no parallel edges.
class AbstractGraph {
public:
    AbstractGraph() = default;
    /// Throws InvalidValue on out-of-range endpoints, self-loops or duplicate edges.
    AbstractGraph(std::size_t vertex_count, std::vector<Edge> edges);

    std::size_t vertex_count() const { return vertex_count_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }

    bool adjacent(Index i, Index j) const;
    std::vector<std::size_t> degrees() const;
    /// Neighbors of each vertex, sorted.
    std::vector<std::vector<Index>> adjacency() const;

    friend bool operator==(const AbstractGraph&, const AbstractGraph&) = default;

private:
    std::size_t vertex_count_ = 0;
    std::vector<Edge> edges_;
};

/// An abstract graph with one coordinate vector per vertex; edges are straight segments.
class EmbeddedGraph {
public:
    EmbeddedGraph() = default;
    /// Throws InvalidValue / DimensionMismatch when positions are missing,
    /// non-finite, of mixed length or not pairwise distinct.
    EmbeddedGraph(AbstractGraph graph, std::vector<Coords> positions);

    const AbstractGraph& graph() const { return graph_; }
    const std::vector<Coords>& positions() const { return positions_; }
    const Coords& position(Index v) const { return positions_[v]; }
    std::size_t dim() const { return positions_.empty() ? 0 : positions_.front().size(); }

    friend bool operator==(const EmbeddedGraph&, const EmbeddedGraph&) = default;

private:
    AbstractGraph graph_;
    std::vector<Coords> positions_;
};

/// Local dimension per sample: 0 near a vertex, 1 near an edge.
using DimensionLabels = std::vector<int>;

using Cluster = std::vector<Index>;

/**
 * Partition of a cloud's point indices into vertex clusters (dimension 0)
 * and edge clusters (dimension 1), with each edge cluster's pair of
 * bounding vertex clusters.
 */
struct Stratification {
    DimensionLabels labels;
    std::vector<Cluster> vertex_clusters;
    std::vector<Cluster> edge_clusters;
    std::vector<std::pair<Index, Index>> incidence;

    /// Abstract graph read off the clusters: one vertex per vertex cluster,
    /// one edge per edge cluster.
    AbstractGraph graph() const;

    friend bool operator==(const Stratification&, const Stratification&) = default;
};

/// Throws InvalidValue unless `s` is a well-formed stratification of `point_count` points.
void check_stratification(const Stratification& s, std::size_t point_count);

struct ValidationReport {
    std::vector<std::string> findings;
    /// Duplicate points. Reported but allowed; they become mutually adjacent.
    std::vector<std::string> warnings;
    bool valid() const { return findings.empty(); }
};

/// Non-finite coordinates and non-positive epsilon are findings; duplicate
/// points are warnings. Mixed point lengths cannot be stored and are rejected
/// by PointCloud::add.
ValidationReport validate_cloud(const PointCloud& cloud);

/// Throws InvalidValue with the first finding unless the cloud is valid and non-empty.
void require_valid(const PointCloud& cloud);

double squared_distance(std::span<const double> a, std::span<const double> b);
double distance(std::span<const double> a, std::span<const double> b);

}  // namespace strata

#endif
