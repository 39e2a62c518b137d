#pragma once

#include <vector>

#include "powersindy/evaluate.hpp"

namespace powersindy {

struct SigmaSweepRow {
    double sigma = 0.0;
    double mean_rmse = 0.0;  // over stable chunks; +inf when none are stable
    std::size_t n_stable = 0;
    std::size_t n_total = 0;
};

struct SigmaSweepResult {
    double best_sigma = 0.0;
    std::vector<SigmaSweepRow> rows;  // ordered by candidate index
};

// For each candidate sigma: smooth -> fit -> simulate -> RMSE against the raw
// unsmoothed omega, averaged over stable chunks. Ties break toward smaller
// sigma. Throws DataError when every candidate ends with zero stable chunks.
SigmaSweepResult optimize_sigma(const std::vector<FrequencyChunk>& chunks,
                                const std::vector<double>& sigma_candidates,
                                const PipelineConfig& fit_cfg, int jobs = 1);

}  // namespace powersindy
