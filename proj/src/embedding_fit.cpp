#include "strata/embedding_fit.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

namespace strata {

FitProblem::FitProblem(const PointCloud& cloud, std::size_t vertex_count, std::vector<Assignment> assignments)
    : cloud_(&cloud), vertex_count_(vertex_count), assignments_(std::move(assignments)) {
    if (assignments_.size() != cloud.size()) {
        throw InvalidValue("fit problem needs one assignment per point");
    }
    for (Index i = 0; i < assignments_.size(); ++i) {
        auto& a = assignments_[i];
        if (a.dimension == 0) {
            a.second = a.first;
        }
        if ((a.dimension != 0 && a.dimension != 1) || a.first >= vertex_count_ || a.second >= vertex_count_ ||
            (a.dimension == 1 && a.first == a.second)) {
            throw InvalidValue("invalid assignment for point " + std::to_string(i));
        }
    }
}

FitProblem FitProblem::from_stratification(const PointCloud& cloud, const Stratification& s) {
    check_stratification(s, cloud.size());
    std::vector<Assignment> assignments(cloud.size());
    for (Index c = 0; c < s.vertex_clusters.size(); ++c) {
        for (auto i : s.vertex_clusters[c]) {
            assignments[i] = {0, c, c};
        }
    }
    for (Index e = 0; e < s.edge_clusters.size(); ++e) {
        for (auto i : s.edge_clusters[e]) {
            assignments[i] = {1, s.incidence[e].first, s.incidence[e].second};
        }
    }
    return FitProblem(cloud, s.vertex_clusters.size(), std::move(assignments));
}

namespace {

void check_state(const FitProblem& problem, const std::vector<Coords>& x, const std::vector<double>& thetas) {
    if (x.size() != problem.vertex_count()) {
        throw DimensionMismatch("expected " + std::to_string(problem.vertex_count()) + " vertex positions");
    }
    for (const auto& v : x) {
        if (v.size() != problem.dim()) {
            throw DimensionMismatch("vertex position has " + std::to_string(v.size()) + " coordinates, cloud has " +
                                    std::to_string(problem.dim()));
        }
    }
    if (thetas.size() != problem.point_count()) {
        throw DimensionMismatch("expected one theta per point");
    }
    for (auto t : thetas) {
        if (!(t >= 0.0 && t <= 1.0)) {
            throw InvalidValue("theta outside [0, 1]");
        }
    }
}

double point_residual(const FitProblem& problem, const std::vector<Coords>& x, Index i, double theta) {
    const auto& a = problem.assignments()[i];
    auto p = problem.cloud().point(i);
    if (a.dimension == 0) {
        return squared_distance(p, x[a.first]);
    }
    const auto& x1 = x[a.first];
    const auto& x2 = x[a.second];
    double s = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        double r = p[k] - theta * x1[k] - (1.0 - theta) * x2[k];
        s += r * r;
    }
    return s;
}

double sum_residuals(const FitProblem& problem, const std::vector<Coords>& x, const std::vector<double>& thetas) {
    double total = 0.0;
    for (Index i = 0; i < problem.point_count(); ++i) {
        total += point_residual(problem, x, i, thetas[i]);
    }
    return total;
}

/// Solves the normal equations for the vertex positions with thetas fixed.
/// Returns the new positions; rows without any data weight are unchanged.
std::vector<Coords> vertex_step(const FitProblem& problem, const std::vector<Coords>& x,
                                const std::vector<double>& thetas, std::vector<Index>& pinned) {
    const auto k = static_cast<Eigen::Index>(problem.vertex_count());
    const auto n = static_cast<Eigen::Index>(problem.dim());
    Eigen::MatrixXd normal = Eigen::MatrixXd::Zero(k, k);
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(k, n);
    for (Index i = 0; i < problem.point_count(); ++i) {
        const auto& a = problem.assignments()[i];
        auto p = problem.cloud().point(i);
        const auto j1 = static_cast<Eigen::Index>(a.first);
        const auto j2 = static_cast<Eigen::Index>(a.second);
        const double w1 = a.dimension == 0 ? 1.0 : thetas[i];
        const double w2 = 1.0 - w1;
        normal(j1, j1) += w1 * w1;
        for (Eigen::Index c = 0; c < n; ++c) {
            rhs(j1, c) += w1 * p[c];
        }
        if (a.dimension == 1) {
            normal(j2, j2) += w2 * w2;
            normal(j1, j2) += w1 * w2;
            normal(j2, j1) += w1 * w2;
            for (Eigen::Index c = 0; c < n; ++c) {
                rhs(j2, c) += w2 * p[c];
            }
        }
    }

    Eigen::MatrixXd current(k, n);
    for (Eigen::Index j = 0; j < k; ++j) {
        for (Eigen::Index c = 0; c < n; ++c) {
            current(j, c) = x[j][c];
        }
    }
    pinned.clear();
    for (Eigen::Index j = 0; j < k; ++j) {
        if (normal(j, j) == 0.0) {
            pinned.push_back(static_cast<Index>(j));
        }
    }
    // Minimum-norm correction: directions the data does not determine stay put.
    Eigen::MatrixXd delta = normal.completeOrthogonalDecomposition().solve(rhs - normal * current);
    for (auto j : pinned) {
        delta.row(static_cast<Eigen::Index>(j)).setZero();
    }

    std::vector<Coords> out = x;
    for (Eigen::Index j = 0; j < k; ++j) {
        for (Eigen::Index c = 0; c < n; ++c) {
            out[j][c] = current(j, c) + delta(j, c);
        }
    }
    return out;
}

/// Damped Gauss-Newton step in the vertices and the interior thetas jointly.
/// Each theta only enters its own residual, so the thetas are eliminated by a
/// Schur complement and the solve stays vertex-sized. Thetas at a bound are
/// held fixed. Returns the proposed vertex positions.
std::vector<Coords> joint_step(const FitProblem& problem, const std::vector<Coords>& x,
                               const std::vector<double>& thetas, double damping) {
    const auto n = static_cast<Eigen::Index>(problem.dim());
    const auto size = static_cast<Eigen::Index>(problem.vertex_count()) * n;
    Eigen::MatrixXd schur = Eigen::MatrixXd::Zero(size, size);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(size);
    Eigen::VectorXd r(n), u(n), col(size);

    for (Index i = 0; i < problem.point_count(); ++i) {
        const auto& a = problem.assignments()[i];
        auto p = problem.cloud().point(i);
        const auto ja = static_cast<Eigen::Index>(a.first) * n;
        const auto jb = static_cast<Eigen::Index>(a.second) * n;
        const double w1 = a.dimension == 0 ? 1.0 : thetas[i];
        const double w2 = a.dimension == 0 ? 0.0 : 1.0 - w1;
        for (Eigen::Index c = 0; c < n; ++c) {
            r(c) = p[c] - w1 * x[a.first][c] - w2 * x[a.second][c];
            u(c) = x[a.first][c] - x[a.second][c];
        }
        for (Eigen::Index c = 0; c < n; ++c) {
            schur(ja + c, ja + c) += w1 * w1;
            rhs(ja + c) += w1 * r(c);
        }
        if (a.dimension == 0) {
            continue;
        }
        for (Eigen::Index c = 0; c < n; ++c) {
            schur(jb + c, jb + c) += w2 * w2;
            schur(ja + c, jb + c) += w1 * w2;
            schur(jb + c, ja + c) += w1 * w2;
            rhs(jb + c) += w2 * r(c);
        }
        const double d = u.squaredNorm();
        if (!(thetas[i] > 0.0 && thetas[i] < 1.0) || d == 0.0) {
            continue;
        }
        col.setZero();
        col.segment(ja, n) += w1 * u;
        col.segment(jb, n) += w2 * u;
        const double g = u.dot(r);
        schur -= col * col.transpose() / (d + damping);
        rhs -= col * (g / (d + damping));
    }
    schur.diagonal().array() += damping;
    Eigen::VectorXd delta = schur.completeOrthogonalDecomposition().solve(rhs);

    std::vector<Coords> out = x;
    for (Index j = 0; j < out.size(); ++j) {
        for (Eigen::Index c = 0; c < n; ++c) {
            out[j][c] += delta(static_cast<Eigen::Index>(j) * n + c);
        }
    }
    return out;
}

}  // namespace

double objective(const FitProblem& problem, const std::vector<Coords>& vertex_positions,
                 const std::vector<double>& thetas) {
    check_state(problem, vertex_positions, thetas);
    return sum_residuals(problem, vertex_positions, thetas);
}

std::vector<double> residuals(const FitProblem& problem, const std::vector<Coords>& vertex_positions,
                              const std::vector<double>& thetas) {
    check_state(problem, vertex_positions, thetas);
    std::vector<double> out(problem.point_count());
    for (Index i = 0; i < out.size(); ++i) {
        out[i] = point_residual(problem, vertex_positions, i, thetas[i]);
    }
    return out;
}

FitState initialize(const FitProblem& problem) {
    FitState state;
    state.vertex_positions.assign(problem.vertex_count(), Coords(problem.dim(), 0.0));
    std::vector<std::size_t> count(problem.vertex_count(), 0);
    for (Index i = 0; i < problem.point_count(); ++i) {
        const auto& a = problem.assignments()[i];
        if (a.dimension != 0) {
            continue;
        }
        auto p = problem.cloud().point(i);
        for (std::size_t c = 0; c < p.size(); ++c) {
            state.vertex_positions[a.first][c] += p[c];
        }
        ++count[a.first];
    }
    for (Index j = 0; j < count.size(); ++j) {
        if (count[j] == 0) {
            throw InvalidValue("vertex " + std::to_string(j) + " has an empty cluster");
        }
        for (auto& c : state.vertex_positions[j]) {
            c /= static_cast<double>(count[j]);
        }
    }
    state.thetas = theta_step(problem, state.vertex_positions);
    return state;
}

std::vector<double> theta_step(const FitProblem& problem, const std::vector<Coords>& vertex_positions) {
    std::vector<double> thetas(problem.point_count(), 0.0);
    for (Index i = 0; i < problem.point_count(); ++i) {
        const auto& a = problem.assignments()[i];
        if (a.dimension == 1) {
            thetas[i] =
                project_to_segment(problem.cloud().point(i), vertex_positions[a.first], vertex_positions[a.second])
                    .theta;
        }
    }
    return thetas;
}

std::vector<double> projected_gradient(const FitProblem& problem, const std::vector<Coords>& vertex_positions,
                                       const std::vector<double>& thetas) {
    check_state(problem, vertex_positions, thetas);
    const std::size_t n = problem.dim();
    const std::size_t vertex_block = problem.vertex_count() * n;
    std::vector<double> grad(vertex_block + problem.point_count(), 0.0);
    std::vector<double> r(n);
    for (Index i = 0; i < problem.point_count(); ++i) {
        const auto& a = problem.assignments()[i];
        auto p = problem.cloud().point(i);
        const auto& x1 = vertex_positions[a.first];
        const auto& x2 = vertex_positions[a.second];
        const double w1 = a.dimension == 0 ? 1.0 : thetas[i];
        const double w2 = a.dimension == 0 ? 0.0 : 1.0 - w1;
        for (std::size_t c = 0; c < n; ++c) {
            r[c] = p[c] - w1 * x1[c] - w2 * x2[c];
            grad[a.first * n + c] -= 2.0 * w1 * r[c];
            if (a.dimension == 1) {
                grad[a.second * n + c] -= 2.0 * w2 * r[c];
            }
        }
        if (a.dimension == 1) {
            double g = 0.0;
            for (std::size_t c = 0; c < n; ++c) {
                g -= 2.0 * r[c] * (x1[c] - x2[c]);
            }
            if ((thetas[i] <= 0.0 && g > 0.0) || (thetas[i] >= 1.0 && g < 0.0)) {
                g = 0.0;
            }
            grad[vertex_block + i] = g;
        }
    }
    return grad;
}

double norm(const std::vector<double>& v) {
    double s = 0.0;
    for (auto x : v) {
        s += x * x;
    }
    return std::sqrt(s);
}

FitResult fit(const FitProblem& problem, const FitState& start, const FitOptions& options) {
    if (problem.vertex_count() == 0) {
        throw InvalidValue("fit needs at least one vertex");
    }
    check_state(problem, start.vertex_positions, start.thetas);

    FitResult result;
    auto x = start.vertex_positions;
    auto thetas = start.thetas;
    double phi = sum_residuals(problem, x, thetas);
    result.objective_trace.push_back(phi);

    while (result.iterations < options.max_iters) {
        ++result.iterations;
        const double before = phi;

        auto x_new = vertex_step(problem, x, thetas, result.pinned);
        if (double phi_x = sum_residuals(problem, x_new, thetas); phi_x <= phi) {
            x = std::move(x_new);
            phi = phi_x;
        }

        // Keep the old theta whenever the projection is not strictly better,
        // so every term (and hence the ordered sum) is non-increasing.
        auto proposed = theta_step(problem, x);
        for (Index i = 0; i < thetas.size(); ++i) {
            if (point_residual(problem, x, i, proposed[i]) < point_residual(problem, x, i, thetas[i])) {
                thetas[i] = proposed[i];
            }
        }
        phi = sum_residuals(problem, x, thetas);

        // Gauss-Newton proposal, followed by exact projections; kept only if
        // it lowers the objective. Damping grows until it does or gives up.
        const double scale = 1.0 + phi / static_cast<double>(problem.point_count());
        for (double damping : {0.0, 1e-6 * scale, 1e-3 * scale, scale}) {
            auto x_gn = joint_step(problem, x, thetas, damping);
            auto t_gn = theta_step(problem, x_gn);
            if (double phi_gn = sum_residuals(problem, x_gn, t_gn); phi_gn < phi) {
                x = std::move(x_gn);
                thetas = std::move(t_gn);
                phi = phi_gn;
                break;
            }
        }
        result.objective_trace.push_back(phi);

        const double decrease = before - phi;
        if (decrease <= options.rel_tol * before || decrease <= options.abs_tol) {
            if (norm(projected_gradient(problem, x, thetas)) <= options.gradient_tol * (1.0 + phi)) {
                result.converged = true;
                break;
            }
            if (decrease <= 0.0) {
                break;
            }
        }
    }
    result.gradient_norm = norm(projected_gradient(problem, x, thetas));

    result.vertex_positions = std::move(x);
    result.thetas = std::move(thetas);
    return result;
}

FitResult fit(const FitProblem& problem, const FitOptions& options) { return fit(problem, initialize(problem), options); }

}  // namespace strata
