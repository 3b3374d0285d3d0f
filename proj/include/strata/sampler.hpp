#ifndef STRATA_SAMPLER_HPP
#define STRATA_SAMPLER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "strata/core.hpp"

namespace strata {

/**
 * Sampling scheme for an embedded graph. Sites are laid out at spacing at
 * most `spacing` along every edge (plus one per vertex) and each is moved by
 * a uniform random vector in the closed ball of radius `noise_radius`.
 *
 * Coverage needs spacing / 2 + noise_radius <= epsilon, i.e.
 * spacing <= 2 (epsilon - noise_radius).
 */
struct SampleOptions {
    /// Defaults to epsilon / 2.
    std::optional<double> noise_radius;
    /// Defaults to epsilon / 2.
    std::optional<double> spacing;
    std::uint64_t seed = 0;
    bool include_vertices = true;
};

/// Throws InvalidValue on options that cannot certify an epsilon-sample.
void check_sample_options(const SampleOptions& options, double epsilon);

/**
 * Draws a seeded epsilon-sample of `graph`. Vertex sites come first (vertex
 * order), then each edge's interior sites in edge order. Each edge draws
 * from its own stream derived from (seed, edge index), so one edge's output
 * does not depend on the others.
 *
 * Throws InvalidValue on bad options, a zero-length edge, or an isolated
 * vertex when include_vertices is false.
 */
PointCloud sample_graph(const EmbeddedGraph& graph, double epsilon, const SampleOptions& options = {});

struct EpsilonSampleCheck {
    bool valid = false;
    /// Largest distance from a sample to the graph (exact).
    double sample_to_graph = 0.0;
    /// Largest distance from the graph to the samples: maximum over a net of
    /// spacing <= resolution on every edge, plus resolution / 2, so it bounds
    /// the true value from above.
    double graph_to_sample = 0.0;
    double hausdorff_bound() const { return std::max(sample_to_graph, graph_to_sample); }
};

/// Checks d_H(cloud, |graph|) <= epsilon. `resolution` defaults to epsilon / 100.
/// Throws InvalidValue on an empty cloud or graph, DimensionMismatch on mixed dimensions.
EpsilonSampleCheck validate_epsilon_sample(const PointCloud& cloud, const EmbeddedGraph& graph, double epsilon,
                                           std::optional<double> resolution = std::nullopt);

/// Minimum angle, edge length and vertex separation the reconstruction relies on.
struct AssumptionReport {
    /// Radians; NaN when no vertex has two incident edges.
    double min_incident_angle = 0.0;
    /// In units of epsilon; infinity without edges.
    double min_edge_length = 0.0;
    /// In units of epsilon; infinity with fewer than two vertices.
    double min_vertex_separation = 0.0;
    bool pass = false;
    std::vector<std::string> violations;
    /// Non-fatal remarks, e.g. isolated vertices.
    std::vector<std::string> notes;
};

inline constexpr double min_edge_length_eps = 30.0;
inline constexpr double min_vertex_separation_eps = 20.0;
/// pi / 6
double min_incident_angle_bound();

AssumptionReport check_assumptions(const EmbeddedGraph& graph, double epsilon);

}  // namespace strata

#endif
