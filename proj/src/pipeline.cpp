#include "strata/pipeline.hpp"

#include "strata/metrics.hpp"

namespace strata {

EmbeddedGraph fitted_graph(const Stratification& s, const FitResult& fit) {
    return EmbeddedGraph(s.graph(), fit.vertex_positions);
}

PipelineResult run_pipeline(const PointCloud& cloud, const ReconstructionParams& params, const FitOptions& options) {
    auto s = reconstruct(cloud, params);
    auto problem = FitProblem::from_stratification(cloud, s);
    auto result = fit(problem, options);
    auto model = fitted_graph(s, result);
    return {std::move(s), std::move(result), std::move(model)};
}

PipelineResult run_pipeline(const PointCloud& cloud) {
    return run_pipeline(cloud, ReconstructionParams::for_epsilon(cloud.epsilon()));
}

BiasReport estimate_bias(const EmbeddedGraph& graph, double epsilon, std::size_t trials, std::uint64_t seed,
                         const SampleOptions& sampling) {
    if (auto check = check_assumptions(graph, epsilon); !check.pass) {
        throw InvalidValue("graph violates the reconstruction assumptions: " + check.violations.front());
    }
    const std::size_t nv = graph.graph().vertex_count();
    const std::size_t dim = graph.dim();

    BiasReport report;
    report.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
        BiasTrial trial;
        trial.seed = seed + t;
        try {
            auto options = sampling;
            options.seed = trial.seed;
            auto cloud = sample_graph(graph, epsilon, options);
            auto run = run_pipeline(cloud);
            auto err = vertex_error(run.model, graph);
            trial.displacement.assign(nv, Coords(dim, 0.0));
            for (Index v = 0; v < nv; ++v) {
                const auto& truth = graph.position(err.mapping[v]);
                for (std::size_t c = 0; c < dim; ++c) {
                    trial.displacement[err.mapping[v]][c] = run.model.position(v)[c] - truth[c];
                }
            }
            trial.ok = true;
        } catch (const std::exception& e) {
            trial.failure = e.what();
            ++report.failures;
        }
        report.per_trial.push_back(std::move(trial));
    }

    report.mean_displacement.assign(nv, Coords(dim, 0.0));
    report.covariance.assign(nv, std::vector<Coords>(dim, Coords(dim, 0.0)));
    const std::size_t ok = trials - report.failures;
    if (ok == 0) {
        return report;
    }
    for (const auto& trial : report.per_trial) {
        if (!trial.ok) {
            continue;
        }
        for (Index v = 0; v < nv; ++v) {
            for (std::size_t c = 0; c < dim; ++c) {
                report.mean_displacement[v][c] += trial.displacement[v][c] / static_cast<double>(ok);
            }
        }
    }
    if (ok < 2) {
        return report;
    }
    for (const auto& trial : report.per_trial) {
        if (!trial.ok) {
            continue;
        }
        for (Index v = 0; v < nv; ++v) {
            for (std::size_t a = 0; a < dim; ++a) {
                for (std::size_t b = 0; b < dim; ++b) {
                    report.covariance[v][a][b] += (trial.displacement[v][a] - report.mean_displacement[v][a]) *
                                                  (trial.displacement[v][b] - report.mean_displacement[v][b]) /
                                                  static_cast<double>(ok - 1);
                }
            }
        }
    }
    return report;
}

}  // namespace strata
