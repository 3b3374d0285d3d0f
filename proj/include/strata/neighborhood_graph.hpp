#ifndef STRATA_NEIGHBORHOOD_GRAPH_HPP
#define STRATA_NEIGHBORHOOD_GRAPH_HPP

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "strata/core.hpp"

namespace strata {

/**
 * Uniform grid over (a subset of) a cloud for fixed-radius queries.
 *
 * Points are bucketed by floor(x / cell_size) per axis. A query of radius r
 * visits every cell overlapping the box [q - r, q + r]; when that box covers
 * more cells than there are indexed points the query degrades to a linear
 * scan. Distance tests compare squared distances against r * r, so the
 * result is exactly { i : |p_i - q|^2 <= r^2 }.
 *
 * The cloud must outlive the index.
 */
class GridIndex {
public:
    GridIndex(const PointCloud& cloud, double cell_size);
    GridIndex(const PointCloud& cloud, double cell_size, std::vector<Index> members);

    /// Indexed points within distance r of q, sorted ascending.
    std::vector<Index> radius_query(std::span<const double> q, double r) const;

    /// Smallest distance from q to an indexed point, searching outwards from
    /// `hint`; infinity when the index is empty.
    double nearest_distance(std::span<const double> q, double hint) const;

    const PointCloud& cloud() const { return *cloud_; }
    std::size_t size() const { return members_.size(); }

private:
    struct KeyHash {
        std::size_t operator()(const std::vector<std::int64_t>& key) const noexcept;
    };

    std::int64_t cell_of(double x) const;
    template <typename Fn>
    void visit(std::span<const double> q, double r, Fn&& fn) const;

    const PointCloud* cloud_;
    double cell_;
    std::vector<Index> members_;
    std::unordered_map<std::vector<std::int64_t>, std::vector<Index>, KeyHash> cells_;
};

/// Indices of `cloud` within distance r of q, sorted. Throws DimensionMismatch.
std::vector<Index> radius_neighbors(const PointCloud& cloud, std::span<const double> q, double r);

/// Threshold graph: p ~ q iff 0 < |p - q| <= radius (duplicates are adjacent).
/// Holds a reference to the cloud, which must outlive it.
class NeighborhoodGraph {
public:
    NeighborhoodGraph(const PointCloud& cloud, double radius, std::vector<std::vector<Index>> adjacency);

    const PointCloud& cloud() const { return *cloud_; }
    double radius() const { return radius_; }
    std::size_t size() const { return adjacency_.size(); }
    const std::vector<Index>& neighbors(Index i) const { return adjacency_[i]; }
    std::size_t edge_count() const;

private:
    const PointCloud* cloud_;
    double radius_;
    std::vector<std::vector<Index>> adjacency_;
};

/// Throws InvalidValue on an invalid cloud or non-positive radius.
NeighborhoodGraph build_graph(const PointCloud& cloud, double radius);

struct ComponentLabeling {
    /// The queried indices, in query order.
    std::vector<Index> indices;
    /// Per queried index, the smallest point index in its component.
    std::vector<Index> labels;
    std::size_t component_count = 0;

    /// Components as sorted index lists, ordered by smallest member.
    std::vector<Cluster> groups() const;
};

/**
 * Connected components of the subgraph induced by `subset`, keeping only the
 * graph edges of length <= max_edge.
 *
 * Throws std::out_of_range for a subset index outside the graph and
 * InvalidValue when max_edge exceeds the graph radius (edges longer than the
 * radius are absent, so the restriction would be unsound).
 */
ComponentLabeling components(const NeighborhoodGraph& graph, std::span<const Index> subset, double max_edge);

/// Union-find with path halving and union by size.
class DisjointSets {
public:
    explicit DisjointSets(std::size_t n);
    std::size_t find(std::size_t x);
    bool unite(std::size_t a, std::size_t b);

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

}  // namespace strata

#endif
