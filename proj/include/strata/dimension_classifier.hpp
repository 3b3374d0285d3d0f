#ifndef STRATA_DIMENSION_CLASSIFIER_HPP
#define STRATA_DIMENSION_CLASSIFIER_HPP

#include <span>

#include "strata/core.hpp"
#include "strata/neighborhood_graph.hpp"

namespace strata {

/**
 * Radii and thresholds of the local dimension test, all absolute (already
 * multiplied by epsilon). `for_epsilon` gives the standard constants:
 * a 10e ball, the [8e, 10e] annulus, 2e connectivity inside the ball, 3e
 * inside the annulus, and an angle threshold of 2 acos(1/4).
 */
struct ClassifierParams {
    double local_radius = 0.0;
    double annulus_inner = 0.0;
    double annulus_outer = 0.0;
    double ball_edge_threshold = 0.0;
    double annulus_edge_threshold = 0.0;
    double angle_threshold = 0.0;

    static ClassifierParams for_epsilon(double epsilon);

    /// Throws InvalidValue unless 0 < inner < outer == local_radius, the
    /// thresholds are positive and the angle lies in (0, pi].
    void check() const;
};

/// 2 acos(1/4), about 2.6362 rad.
double default_angle_threshold();

/// Centroids closer than this to q make the angle test degenerate.
inline constexpr double degenerate_centroid_distance = 1e-12;

/**
 * Compares the angle at q between the centroids of two point sets with
 * `angle_threshold`: 0 if strictly smaller, else 1. A centroid within
 * degenerate_centroid_distance of q yields 0.
 */
int angle_test(const PointCloud& cloud, std::span<const double> q, std::span<const Index> comp_a,
               std::span<const Index> comp_b, double angle_threshold);

/// Per-point breakdown of one classification, for diagnostics and tests.
struct PointClassification {
    int dimension = 0;
    std::size_t ball_size = 0;
    std::size_t ball_components = 0;
    std::size_t annulus_size = 0;
    std::size_t annulus_components = 0;
    /// Angle between the two annulus centroids; NaN unless the angle test ran.
    double angle = 0.0;
};

/**
 * Classifies the neighbourhood of q = cloud[q_index] as edge-like (1) or
 * vertex-like (0).
 *
 *  1. B = points within local_radius of q, q included. If B is not connected
 *     at ball_edge_threshold the point is near an edge: 1.
 *  2. A = points of B with annulus_inner <= d(p, q) <= annulus_outer. If A
 *     does not split into exactly two components at annulus_edge_threshold:
 *     0.
 *  3. Otherwise angle_test on the two components.
 *
 * `graph` must be built on the same cloud with radius >= both connectivity
 * thresholds. `ball_index` is an index over the cloud used for the ball query.
 */
PointClassification classify_point_detail(const NeighborhoodGraph& graph, const GridIndex& ball_index, Index q_index,
                                           const ClassifierParams& params);

int classify_point(const NeighborhoodGraph& graph, const GridIndex& ball_index, Index q_index,
                   const ClassifierParams& params);

/// Convenience overload building its own ball index.
int classify_point(const NeighborhoodGraph& graph, Index q_index, const ClassifierParams& params);

/// classify_point over every index of the graph's cloud.
DimensionLabels classify_all(const NeighborhoodGraph& graph, const ClassifierParams& params);

}  // namespace strata

#endif
