#include "strata/dimension_classifier.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "strata/geometry.hpp"

namespace strata {

double default_angle_threshold() { return 2.0 * std::acos(0.25); }

ClassifierParams ClassifierParams::for_epsilon(double epsilon) {
    ClassifierParams p;
    p.local_radius = 10.0 * epsilon;
    p.annulus_inner = 8.0 * epsilon;
    p.annulus_outer = 10.0 * epsilon;
    p.ball_edge_threshold = 2.0 * epsilon;
    p.annulus_edge_threshold = 3.0 * epsilon;
    p.angle_threshold = default_angle_threshold();
    return p;
}

void ClassifierParams::check() const {
    if (!(annulus_inner > 0.0 && annulus_inner < annulus_outer && annulus_outer == local_radius)) {
        throw InvalidValue("classifier radii must satisfy 0 < annulus_inner < annulus_outer == local_radius");
    }
    if (!(ball_edge_threshold > 0.0 && annulus_edge_threshold > 0.0)) {
        throw InvalidValue("classifier connectivity thresholds must be positive");
    }
    if (!(angle_threshold > 0.0 && angle_threshold <= std::numbers::pi)) {
        throw InvalidValue("angle threshold must lie in (0, pi]");
    }
}

namespace {

std::vector<double> centroid(const PointCloud& cloud, std::span<const Index> members) {
    std::vector<double> c(cloud.dim(), 0.0);
    for (auto i : members) {
        auto p = cloud.point(i);
        for (std::size_t k = 0; k < c.size(); ++k) {
            c[k] += p[k];
        }
    }
    for (auto& x : c) {
        x /= static_cast<double>(members.size());
    }
    return c;
}

double angle_between_centroids(const PointCloud& cloud, std::span<const double> q, std::span<const Index> comp_a,
                               std::span<const Index> comp_b) {
    if (comp_a.empty() || comp_b.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    auto ca = centroid(cloud, comp_a);
    auto cb = centroid(cloud, comp_b);
    if (distance(ca, q) <= degenerate_centroid_distance || distance(cb, q) <= degenerate_centroid_distance) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return angle_at(q, ca, cb);
}

}  // namespace

int angle_test(const PointCloud& cloud, std::span<const double> q, std::span<const Index> comp_a,
               std::span<const Index> comp_b, double angle_threshold) {
    double angle = angle_between_centroids(cloud, q, comp_a, comp_b);
    if (std::isnan(angle)) {
        return 0;
    }
    return angle < angle_threshold ? 0 : 1;
}

PointClassification classify_point_detail(const NeighborhoodGraph& graph, const GridIndex& ball_index, Index q_index,
                                          const ClassifierParams& params) {
    const auto& cloud = graph.cloud();
    const auto q = cloud.point(q_index);
    PointClassification out;
    out.angle = std::numeric_limits<double>::quiet_NaN();

    auto ball = ball_index.radius_query(q, params.local_radius);
    out.ball_size = ball.size();
    out.ball_components = components(graph, ball, params.ball_edge_threshold).component_count;
    if (out.ball_components != 1) {
        out.dimension = 1;
        return out;
    }

    const double inner2 = params.annulus_inner * params.annulus_inner;
    const double outer2 = params.annulus_outer * params.annulus_outer;
    std::vector<Index> annulus;
    for (auto i : ball) {
        double d2 = squared_distance(cloud.point(i), q);
        if (d2 >= inner2 && d2 <= outer2) {
            annulus.push_back(i);
        }
    }
    out.annulus_size = annulus.size();
    auto labeling = components(graph, annulus, params.annulus_edge_threshold);
    out.annulus_components = labeling.component_count;
    if (out.annulus_components != 2) {
        out.dimension = 0;
        return out;
    }

    auto parts = labeling.groups();
    out.angle = angle_between_centroids(cloud, q, parts[0], parts[1]);
    out.dimension = angle_test(cloud, q, parts[0], parts[1], params.angle_threshold);
    return out;
}

int classify_point(const NeighborhoodGraph& graph, const GridIndex& ball_index, Index q_index,
                   const ClassifierParams& params) {
    return classify_point_detail(graph, ball_index, q_index, params).dimension;
}

int classify_point(const NeighborhoodGraph& graph, Index q_index, const ClassifierParams& params) {
    GridIndex index(graph.cloud(), params.local_radius);
    return classify_point(graph, index, q_index, params);
}

DimensionLabels classify_all(const NeighborhoodGraph& graph, const ClassifierParams& params) {
    params.check();
    if (graph.radius() < params.ball_edge_threshold || graph.radius() < params.annulus_edge_threshold) {
        throw InvalidValue("neighborhood graph radius is below the classifier connectivity thresholds");
    }
    GridIndex index(graph.cloud(), params.local_radius);
    DimensionLabels labels(graph.size());
    for (Index i = 0; i < graph.size(); ++i) {
        labels[i] = classify_point(graph, index, i, params);
    }
    return labels;
}

}  // namespace strata
