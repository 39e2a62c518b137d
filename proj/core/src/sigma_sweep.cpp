#include "powersindy/sigma_sweep.hpp"

#include <cmath>
#include <limits>

#include "powersindy/errors.hpp"
#include "powersindy/parallel.hpp"

namespace powersindy {

SigmaSweepResult optimize_sigma(const std::vector<FrequencyChunk>& chunks,
                                const std::vector<double>& sigma_candidates,
                                const PipelineConfig& fit_cfg, int jobs) {
    if (chunks.empty()) throw DataError("optimize_sigma: no chunks");
    if (sigma_candidates.empty()) throw ConfigError("optimize_sigma: no sigma candidates");

    SigmaSweepResult result;
    result.rows.resize(sigma_candidates.size());

    const std::size_t n_cells = sigma_candidates.size() * chunks.size();
    std::vector<EvaluationRecord> records(n_cells);
    parallel_for(n_cells, jobs, [&](std::size_t cell) {
        const std::size_t s = cell / chunks.size();
        const std::size_t c = cell % chunks.size();
        PipelineConfig cfg = fit_cfg;
        cfg.smoothing.sigma = sigma_candidates[s];
        records[cell] = evaluate_chunk(chunks[c], cfg);
    });

    for (std::size_t s = 0; s < sigma_candidates.size(); ++s) {
        SigmaSweepRow row;
        row.sigma = sigma_candidates[s];
        row.n_total = chunks.size();
        double sum = 0.0;
        for (std::size_t c = 0; c < chunks.size(); ++c) {
            const auto& rec = records[s * chunks.size() + c];
            if (rec.stable) {
                sum += *rec.rmse;
                ++row.n_stable;
            }
        }
        row.mean_rmse = row.n_stable ? sum / static_cast<double>(row.n_stable)
                                     : std::numeric_limits<double>::infinity();
        result.rows[s] = row;
    }

    // Argmin with ties broken toward smaller sigma; candidate order does not
    // have to be sorted, so compare on the sigma value.
    std::size_t best = 0;
    bool found = false;
    for (std::size_t s = 0; s < result.rows.size(); ++s) {
        const auto& row = result.rows[s];
        if (std::isinf(row.mean_rmse)) continue;
        if (!found || row.mean_rmse < result.rows[best].mean_rmse ||
            (row.mean_rmse == result.rows[best].mean_rmse &&
             row.sigma < result.rows[best].sigma)) {
            best = s;
            found = true;
        }
    }
    if (!found)
        throw DataError("optimize_sigma: every candidate ended with zero stable chunks");
    result.best_sigma = result.rows[best].sigma;
    return result;
}

}  // namespace powersindy
