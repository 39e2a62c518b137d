#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "powersindy/evaluate.hpp"

namespace powersindy {

// Appendix-style per-optimizer grids. Values must lie inside the declared
// ranges; empty optional disables that optimizer.
struct LassoGrid {
    std::vector<double> alpha;  // within [1e-10, 1e-3]
    std::vector<double> tol{1e-6};  // within {1e-7, 1e-6}
};

struct StlsqGrid {
    std::vector<double> lambda;  // within [1e-10, 1e-3]
    std::vector<double> alpha;   // within [1e-3, 10]
};

struct Sr3Grid {
    std::vector<double> kappa;  // within [1e-10, 1e-3]
    std::vector<double> nu;     // within [1e-3, 10]
    std::vector<Sr3Norm> norms{Sr3Norm::L0, Sr3Norm::L1, Sr3Norm::L2};
};

struct GridSpec {
    std::vector<LibrarySpec> libraries;
    std::optional<LassoGrid> lasso;
    std::optional<StlsqGrid> stlsq;
    std::optional<Sr3Grid> sr3;
    SmoothingConfig smoothing;
    double divergence_bound_scale = 50.0;
    double divergence_bound_floor = 10.0;
    double active_threshold = 1e-6;

    void validate() const;  // throws ConfigError
};

// One point per decade over [1e-10, 1e-3] (8 points), or any decade range.
std::vector<double> decade_grid(double lo, double hi);

// Appendix-A defaults for all three optimizers over the given libraries.
GridSpec default_grid_spec(std::vector<LibrarySpec> libraries);

struct GridRow {
    std::string library;          // LibrarySpec name
    std::string optimizer;        // optimizer_label
    OptimizerConfig config;
    std::map<std::string, double> params;  // axis name -> value
    AggregateReport report;
    double fit_converged_fraction = 1.0;
    bool flagged_nonconverged = false;  // converged on <= 50% of chunks
    std::string error;                  // non-empty when this cell failed
};

struct GridResult {
    std::vector<GridRow> rows;  // deterministic (library, optimizer, config) order
};

GridResult run_grid(const std::vector<FrequencyChunk>& chunks, const GridSpec& spec,
                    int jobs = 1);

enum class BestCriterion { MinRmse, MaxStability };

struct BestConfigResult {
    std::vector<GridRow> rows;  // one per (library, optimizer) group
    std::vector<std::string> failed_groups;  // all-null groups under MinRmse
};

// Argmin of mean stable RMSE (or argmax stability) per (library, optimizer)
// group. Ties break toward the larger sparsity parameter, then the earlier
// grid position.
BestConfigResult best_config(const GridResult& result, BestCriterion criterion);

enum class HeatmapMetric { Rmse, Stability };

struct HeatmapCell {
    double x = 0.0;
    double y = 0.0;
    std::optional<double> value;  // null metrics export as empty cells
};

struct HeatmapTable {
    std::string param_x;
    std::string param_y;
    HeatmapMetric metric = HeatmapMetric::Rmse;
    std::vector<HeatmapCell> cells;  // x-major, then y
};

// Long-format table over one (optimizer, library) group of the result.
// Throws ConfigError when an axis is not a parameter of that optimizer, does
// not vary, or fails to identify cells uniquely.
HeatmapTable emit_heatmap(const GridResult& result, const std::string& optimizer,
                          const std::string& library, const std::string& param_x,
                          const std::string& param_y, HeatmapMetric metric);

}  // namespace powersindy
