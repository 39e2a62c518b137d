#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "powersindy/library.hpp"
#include "powersindy/preprocess.hpp"
#include "powersindy/regression.hpp"
#include "powersindy/simulate.hpp"

namespace powersindy {

// Full single-chunk pipeline settings.
struct PipelineConfig {
    SmoothingConfig smoothing;
    LibrarySpec library;
    OptimizerConfig optimizer = StlsqConfig{};
    double divergence_bound_scale = 50.0;  // times max |raw omega|
    double divergence_bound_floor = 10.0;  // rad/s
    double active_threshold = 1e-6;        // feature-count threshold
};

struct EvaluationRecord {
    std::string chunk_id;
    std::optional<double> rmse;  // present iff stable
    bool stable = false;
    int n_active_features = 0;  // omega-dot equation, at active_threshold
    bool fit_converged = true;
};

struct AggregateReport {
    std::optional<double> mean_stable_rmse;  // absent when no chunk is stable
    std::optional<double> rmse_std;          // population std over stable chunks
    double stability_fraction = 0.0;
    double mean_active_features = 0.0;
    std::size_t n_chunks = 0;
};

// sqrt(mean of squared differences); throws DataError on length mismatch.
double rmse(const Eigen::VectorXd& sim_omega, const Eigen::VectorXd& ref_omega);

// Entries with |value| >= threshold, per target column.
std::vector<int> active_features(const CoefficientMatrix& coeffs, double threshold);

AggregateReport aggregate(const std::vector<EvaluationRecord>& records);

// smooth -> trajectory -> features -> fit; no simulation.
FittedModel fit_chunk(const FrequencyChunk& chunk, const PipelineConfig& cfg);

// Full chain: fit, then simulate from the initial smoothed state over the
// chunk's horizon and score against the raw empirical omega. Errors from the
// constituents propagate with the chunk id attached.
EvaluationRecord evaluate_chunk(const FrequencyChunk& chunk, const PipelineConfig& cfg);

double divergence_bound(const AngularSeries& raw, const PipelineConfig& cfg);

}  // namespace powersindy
