#ifndef STRATA_PIPELINE_HPP
#define STRATA_PIPELINE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "strata/core.hpp"
#include "strata/embedding_fit.hpp"
#include "strata/sampler.hpp"
#include "strata/stratification.hpp"

namespace strata {

struct PipelineResult {
    Stratification stratification;
    FitResult fit;
    EmbeddedGraph model;
};

/// Fitted vertex positions on the graph read off the stratification.
EmbeddedGraph fitted_graph(const Stratification& s, const FitResult& fit);

/// reconstruct() followed by fit(). Throws IncidenceError when the structure
/// cannot be recovered.
PipelineResult run_pipeline(const PointCloud& cloud, const ReconstructionParams& params, const FitOptions& options = {});
PipelineResult run_pipeline(const PointCloud& cloud);

struct BiasTrial {
    std::uint64_t seed = 0;
    bool ok = false;
    std::string failure;
    /// Per true vertex: fitted - true position under the error-minimizing
    /// isomorphism. Empty when the trial failed.
    std::vector<Coords> displacement;
};

struct BiasReport {
    std::size_t trials = 0;
    std::size_t failures = 0;
    std::vector<BiasTrial> per_trial;
    /// Over successful trials, per true vertex.
    std::vector<Coords> mean_displacement;
    std::vector<std::vector<Coords>> covariance;
};

/**
 * Samples `graph` `trials` times (seeds seed, seed + 1, ...), reconstructs
 * and fits each sample, and summarizes how far each fitted vertex lands from
 * its true position. Trials whose structure is not recovered are counted as
 * failures and left out of the summary. Throws InvalidValue if the graph
 * fails check_assumptions.
 */
BiasReport estimate_bias(const EmbeddedGraph& graph, double epsilon, std::size_t trials, std::uint64_t seed,
                         const SampleOptions& sampling = {});

}  // namespace strata

#endif
