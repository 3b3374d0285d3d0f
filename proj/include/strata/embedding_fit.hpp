#ifndef STRATA_EMBEDDING_FIT_HPP
#define STRATA_EMBEDDING_FIT_HPP

#include <vector>

#include "strata/core.hpp"
#include "strata/geometry.hpp"

namespace strata {

/**
 * Least-squares model of a stratified sample: every dimension-0 point is
 * attached to one vertex, every dimension-1 point to the segment between
 * two vertices. The unknowns are the vertex positions and, per edge point,
 * its local coordinate theta in [0, 1] (theta = 1 at `first`).
 *
 * Holds a reference to the cloud, which must outlive the problem.
 */
class FitProblem {
public:
    struct Assignment {
        int dimension = 0;
        Index first = 0;
        /// Second endpoint; equal to `first` for dimension-0 points.
        Index second = 0;
    };

    FitProblem(const PointCloud& cloud, std::size_t vertex_count, std::vector<Assignment> assignments);

    /// Assignments read off a stratification: vertex cluster c -> vertex c,
    /// edge cluster e -> segment incidence[e].
    static FitProblem from_stratification(const PointCloud& cloud, const Stratification& s);

    const PointCloud& cloud() const { return *cloud_; }
    std::size_t vertex_count() const { return vertex_count_; }
    std::size_t point_count() const { return assignments_.size(); }
    std::size_t dim() const { return cloud_->dim(); }
    const std::vector<Assignment>& assignments() const { return assignments_; }

private:
    const PointCloud* cloud_;
    std::size_t vertex_count_;
    std::vector<Assignment> assignments_;
};

struct FitOptions {
    std::size_t max_iters = 200;
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    /// A small decrease only counts as convergence once the projected
    /// gradient norm is at most gradient_tol * (1 + objective).
    double gradient_tol = 1e-6;
};

struct FitResult {
    std::vector<Coords> vertex_positions;
    /// Per point; 0 for dimension-0 points.
    std::vector<double> thetas;
    /// Objective before the first sweep and after every sweep.
    std::vector<double> objective_trace;
    std::size_t iterations = 0;
    bool converged = false;
    /// Vertices with no weighted data term; they keep their initial position.
    std::vector<Index> pinned;
    /// Norm of projected_gradient() at the returned point.
    double gradient_norm = 0.0;

    double objective() const { return objective_trace.empty() ? 0.0 : objective_trace.back(); }
};

/// Sum over points, in index order, of the squared distance to the assigned
/// vertex or to theta*x_first + (1-theta)*x_second.
/// Throws DimensionMismatch / InvalidValue on malformed arguments.
double objective(const FitProblem& problem, const std::vector<Coords>& vertex_positions,
                 const std::vector<double>& thetas);

/// Per-point squared residuals; objective() is their sum.
std::vector<double> residuals(const FitProblem& problem, const std::vector<Coords>& vertex_positions,
                              const std::vector<double>& thetas);

struct FitState {
    std::vector<Coords> vertex_positions;
    std::vector<double> thetas;
};

/// Vertex positions at the centroid of each vertex's dimension-0 points,
/// thetas by projection. Throws InvalidValue if a vertex has no such point.
FitState initialize(const FitProblem& problem);

/// Optimal theta for every edge point given the vertex positions.
std::vector<double> theta_step(const FitProblem& problem, const std::vector<Coords>& vertex_positions);

/// Gradient of the objective, vertex block first (row-major, vertex by
/// coordinate) then one entry per point. Theta components are projected
/// onto the feasible directions of [0, 1] and zero for dimension-0 points.
std::vector<double> projected_gradient(const FitProblem& problem, const std::vector<Coords>& vertex_positions,
                                       const std::vector<double>& thetas);

double norm(const std::vector<double>& v);

/**
 * Block-coordinate descent from `start`: alternate an exact linear
 * least-squares solve for the vertex positions (thetas fixed) with exact
 * per-point projections for the thetas (vertices fixed). Neither half-step
 * may increase the objective; a half-step that would (by rounding) is
 * discarded. Each sweep then tries a damped Gauss-Newton step in vertices
 * and interior thetas together, kept only if it lowers the objective; this
 * makes zero-residual problems converge in a few sweeps.
 *
 * A sweep that decreases the objective by at most rel_tol * objective or
 * abs_tol ends the fit as converged if the projected gradient passes
 * gradient_tol, and as not converged if the sweep made no progress at all.
 * Otherwise the fit continues, up to max_iters sweeps.
 */
FitResult fit(const FitProblem& problem, const FitState& start, const FitOptions& options = {});

/// fit() from initialize(problem).
FitResult fit(const FitProblem& problem, const FitOptions& options = {});

}  // namespace strata

#endif
