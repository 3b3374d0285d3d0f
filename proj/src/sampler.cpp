#include "strata/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "strata/geometry.hpp"
#include "strata/neighborhood_graph.hpp"

namespace strata {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t id) { return std::mt19937_64(splitmix64(seed ^ splitmix64(id))); }

/// Uniform in the closed ball of radius `radius`.
void perturb(std::span<double> p, double radius, std::mt19937_64& rng) {
    if (radius == 0.0) {
        return;
    }
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> dir(p.size());
    double len = 0.0;
    do {
        len = 0.0;
        for (auto& d : dir) {
            d = gauss(rng);
            len += d * d;
        }
    } while (len == 0.0);
    len = std::sqrt(len);
    const double r = radius * std::pow(unit(rng), 1.0 / static_cast<double>(p.size()));
    for (std::size_t k = 0; k < p.size(); ++k) {
        p[k] += r * dir[k] / len;
    }
}

/// Number of equal pieces of length <= step covering `length`. The small
/// slack keeps exact multiples (1.0 / 0.05) from gaining a piece to rounding.
std::size_t pieces(double length, double step) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(length / step - 1e-9)));
}

}  // namespace

void check_sample_options(const SampleOptions& options, double epsilon) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw InvalidValue("epsilon must be positive");
    }
    const double rho = options.noise_radius.value_or(epsilon / 2.0);
    const double s = options.spacing.value_or(epsilon / 2.0);
    if (!(rho >= 0.0)) {
        throw InvalidValue("noise_radius must be >= 0");
    }
    if (!(rho < epsilon)) {
        throw InvalidValue("noise_radius must be < epsilon");
    }
    if (!(s > 0.0)) {
        throw InvalidValue("spacing must be positive");
    }
    if (!(s <= 2.0 * (epsilon - rho))) {
        throw InvalidValue("spacing must be <= 2 * (epsilon - noise_radius)");
    }
}

PointCloud sample_graph(const EmbeddedGraph& graph, double epsilon, const SampleOptions& options) {
    check_sample_options(options, epsilon);
    const double rho = options.noise_radius.value_or(epsilon / 2.0);
    const double s = options.spacing.value_or(epsilon / 2.0);
    const auto& g = graph.graph();
    if (g.vertex_count() == 0) {
        throw InvalidValue("cannot sample an empty graph");
    }
    for (const auto& e : g.edges()) {
        if (distance(graph.position(e.a), graph.position(e.b)) == 0.0) {
            throw InvalidValue("zero-length edge (" + std::to_string(e.a) + ", " + std::to_string(e.b) + ")");
        }
    }

    PointCloud cloud(graph.dim(), epsilon);
    Coords site(graph.dim());
    if (options.include_vertices) {
        auto rng = stream(options.seed, 0);
        for (Index v = 0; v < g.vertex_count(); ++v) {
            site = graph.position(v);
            perturb(site, rho, rng);
            cloud.add(site);
        }
    } else {
        auto deg = g.degrees();
        if (auto it = std::find(deg.begin(), deg.end(), 0); it != deg.end()) {
            throw InvalidValue("isolated vertex " + std::to_string(it - deg.begin()) +
                               " cannot be covered without vertex sites");
        }
    }

    for (Index e = 0; e < g.edge_count(); ++e) {
        const auto& a = graph.position(g.edges()[e].a);
        const auto& b = graph.position(g.edges()[e].b);
        const std::size_t m = pieces(distance(a, b), s);
        auto rng = stream(options.seed, e + 1);
        // With vertex sites the endpoints are already covered: k = 1..m-1 at
        // k/m. Without them, midpoints of the m pieces.
        const std::size_t count = options.include_vertices ? m - 1 : m;
        for (std::size_t k = 0; k < count; ++k) {
            const double t = options.include_vertices ? static_cast<double>(k + 1) / static_cast<double>(m)
                                                      : (static_cast<double>(k) + 0.5) / static_cast<double>(m);
            for (std::size_t c = 0; c < site.size(); ++c) {
                site[c] = a[c] + t * (b[c] - a[c]);
            }
            perturb(site, rho, rng);
            cloud.add(site);
        }
    }
    return cloud;
}

EpsilonSampleCheck validate_epsilon_sample(const PointCloud& cloud, const EmbeddedGraph& graph, double epsilon,
                                           std::optional<double> resolution) {
    if (cloud.empty()) {
        throw InvalidValue("empty cloud");
    }
    const auto& g = graph.graph();
    if (g.vertex_count() == 0) {
        throw InvalidValue("empty graph");
    }
    if (cloud.dim() != graph.dim()) {
        throw DimensionMismatch("cloud is " + std::to_string(cloud.dim()) + "-dimensional, graph is " +
                                std::to_string(graph.dim()) + "-dimensional");
    }
    const double delta = resolution.value_or(epsilon / 100.0);
    if (!(delta > 0.0)) {
        throw InvalidValue("resolution must be positive");
    }
    const auto deg = g.degrees();

    EpsilonSampleCheck out;
    for (Index i = 0; i < cloud.size(); ++i) {
        auto p = cloud.point(i);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& e : g.edges()) {
            best = std::min(best, project_to_segment(p, graph.position(e.a), graph.position(e.b)).squared_distance);
        }
        for (Index v = 0; v < g.vertex_count(); ++v) {
            if (deg[v] == 0) {
                best = std::min(best, squared_distance(p, graph.position(v)));
            }
        }
        out.sample_to_graph = std::max(out.sample_to_graph, std::sqrt(best));
    }

    GridIndex index(cloud, epsilon);
    double worst = 0.0;
    for (Index v = 0; v < g.vertex_count(); ++v) {
        worst = std::max(worst, index.nearest_distance(graph.position(v), epsilon));
    }
    Coords q(graph.dim());
    for (const auto& e : g.edges()) {
        const auto& a = graph.position(e.a);
        const auto& b = graph.position(e.b);
        const std::size_t m = pieces(distance(a, b), delta);
        for (std::size_t k = 1; k < m; ++k) {
            const double t = static_cast<double>(k) / static_cast<double>(m);
            for (std::size_t c = 0; c < q.size(); ++c) {
                q[c] = a[c] + t * (b[c] - a[c]);
            }
            worst = std::max(worst, index.nearest_distance(q, epsilon));
        }
    }
    out.graph_to_sample = worst + delta / 2.0;
    out.valid = out.sample_to_graph <= epsilon && out.graph_to_sample <= epsilon;
    return out;
}

double min_incident_angle_bound() { return std::numbers::pi / 6.0; }

AssumptionReport check_assumptions(const EmbeddedGraph& graph, double epsilon) {
    if (!(epsilon > 0.0)) {
        throw InvalidValue("epsilon must be positive");
    }
    const auto& g = graph.graph();
    const auto adj = g.adjacency();
    AssumptionReport report;
    report.min_incident_angle = std::numeric_limits<double>::quiet_NaN();
    report.min_edge_length = std::numeric_limits<double>::infinity();
    report.min_vertex_separation = std::numeric_limits<double>::infinity();

    for (Index v = 0; v < g.vertex_count(); ++v) {
        if (adj[v].empty()) {
            report.notes.push_back("vertex " + std::to_string(v) + " is isolated and contributes no angle");
        }
        for (std::size_t i = 0; i < adj[v].size(); ++i) {
            for (std::size_t j = i + 1; j < adj[v].size(); ++j) {
                double angle = angle_at(graph.position(v), graph.position(adj[v][i]), graph.position(adj[v][j]));
                if (std::isnan(report.min_incident_angle) || angle < report.min_incident_angle) {
                    report.min_incident_angle = angle;
                }
                if (angle < min_incident_angle_bound()) {
                    report.violations.push_back("edges " + std::to_string(v) + "-" + std::to_string(adj[v][i]) +
                                                " and " + std::to_string(v) + "-" + std::to_string(adj[v][j]) +
                                                " meet at " + std::to_string(angle) + " rad < pi/6");
                }
            }
        }
    }
    for (const auto& e : g.edges()) {
        double len = distance(graph.position(e.a), graph.position(e.b)) / epsilon;
        report.min_edge_length = std::min(report.min_edge_length, len);
        if (len < min_edge_length_eps) {
            report.violations.push_back("edge " + std::to_string(e.a) + "-" + std::to_string(e.b) + " has length " +
                                        std::to_string(len) + " epsilon < 30 epsilon");
        }
    }
    for (Index u = 0; u < g.vertex_count(); ++u) {
        for (Index v = u + 1; v < g.vertex_count(); ++v) {
            double sep = distance(graph.position(u), graph.position(v)) / epsilon;
            report.min_vertex_separation = std::min(report.min_vertex_separation, sep);
            if (sep < min_vertex_separation_eps) {
                report.violations.push_back("vertices " + std::to_string(u) + " and " + std::to_string(v) +
                                            " are " + std::to_string(sep) + " epsilon apart < 20 epsilon");
            }
        }
    }
    report.pass = report.violations.empty();
    return report;
}

}  // namespace strata
