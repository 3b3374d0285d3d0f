#ifndef STRATA_METRICS_HPP
#define STRATA_METRICS_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "strata/core.hpp"

namespace strata {

/// Hausdorff distance between two finite point sets (exact, all pairs).
/// Throws InvalidValue if either is empty, DimensionMismatch on mixed dimensions.
double hausdorff(const std::vector<Coords>& a, const std::vector<Coords>& b);

/// Graph too large for the exhaustive matchers.
class UnsupportedSize : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t max_isomorphism_vertices = 12;

/// mapping[v] is the vertex of the second graph matched to v of the first.
using VertexMapping = std::vector<Index>;

/// An adjacency-preserving bijection g1 -> g2, or nullopt. Backtracking with
/// degree pruning; the returned mapping has been re-checked edge by edge.
std::optional<VertexMapping> graph_isomorphic(const AbstractGraph& g1, const AbstractGraph& g2);

/// Every isomorphism g1 -> g2 (in lexicographic order of the mapping).
std::vector<VertexMapping> all_isomorphisms(const AbstractGraph& g1, const AbstractGraph& g2);

struct VertexError {
    double max_error = 0.0;
    double mean_error = 0.0;
    /// fitted vertex -> truth vertex
    VertexMapping mapping;
    /// Distance of each fitted vertex to its matched truth vertex.
    std::vector<double> per_vertex;
};

class NotIsomorphic : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Among all isomorphisms fitted -> truth, the one with the smallest maximum
/// vertex displacement (ties broken by mean). Throws NotIsomorphic.
VertexError vertex_error(const EmbeddedGraph& fitted, const EmbeddedGraph& truth);

struct EvaluationReport {
    bool isomorphic = false;
    std::optional<double> max_vertex_error;
    std::optional<double> mean_vertex_error;
    std::optional<double> hausdorff_sample_to_model;
};

/// Structure and position scores of a fitted graph against ground truth.
/// With a cloud, also the Hausdorff distance between the samples and the
/// fitted model, as the upper bound of validate_epsilon_sample at the
/// cloud's epsilon.
EvaluationReport evaluate(const EmbeddedGraph& fitted, const EmbeddedGraph& truth, const PointCloud* cloud = nullptr);

}  // namespace strata

#endif
