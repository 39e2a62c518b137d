#include "powersindy/gridsearch.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "powersindy/errors.hpp"
#include "powersindy/parallel.hpp"

namespace powersindy {

std::vector<double> decade_grid(double lo, double hi) {
    std::vector<double> grid;
    const int e_lo = static_cast<int>(std::lround(std::log10(lo)));
    const int e_hi = static_cast<int>(std::lround(std::log10(hi)));
    for (int e = e_lo; e <= e_hi; ++e) grid.push_back(std::pow(10.0, e));
    return grid;
}

namespace {

bool within(double v, double lo, double hi) {
    return v >= lo * (1.0 - 1e-9) && v <= hi * (1.0 + 1e-9);
}

void check_range(const std::vector<double>& values, double lo, double hi,
                 const std::string& what) {
    if (values.empty()) throw ConfigError("grid: empty " + what + " grid");
    for (double v : values)
        if (!within(v, lo, hi))
            throw ConfigError("grid: " + what + " value outside declared range");
}

}  // namespace

void GridSpec::validate() const {
    if (libraries.empty()) throw ConfigError("grid: no libraries");
    for (const auto& lib : libraries) lib.validate();
    if (!lasso && !stlsq && !sr3) throw ConfigError("grid: no optimizer grids");
    if (lasso) {
        check_range(lasso->alpha, 1e-10, 1e-3, "lasso alpha");
        check_range(lasso->tol, 1e-7, 1e-6, "lasso tol");
    }
    if (stlsq) {
        check_range(stlsq->lambda, 1e-10, 1e-3, "stlsq lambda");
        check_range(stlsq->alpha, 1e-3, 10.0, "stlsq alpha");
    }
    if (sr3) {
        check_range(sr3->kappa, 1e-10, 1e-3, "sr3 kappa");
        check_range(sr3->nu, 1e-3, 10.0, "sr3 nu");
        if (sr3->norms.empty()) throw ConfigError("grid: empty sr3 norm list");
    }
    smoothing.validate();
}

GridSpec default_grid_spec(std::vector<LibrarySpec> libraries) {
    GridSpec spec;
    spec.libraries = std::move(libraries);
    spec.lasso = LassoGrid{decade_grid(1e-10, 1e-3), {1e-7, 1e-6}};
    spec.stlsq = StlsqGrid{decade_grid(1e-10, 1e-3), decade_grid(1e-3, 10.0)};
    spec.sr3 = Sr3Grid{decade_grid(1e-10, 1e-3), decade_grid(1e-3, 10.0),
                       {Sr3Norm::L0, Sr3Norm::L1, Sr3Norm::L2}};
    return spec;
}

namespace {

struct Cell {
    LibrarySpec library;
    OptimizerConfig config;
    std::map<std::string, double> params;
};

// Deterministic cell enumeration: libraries in the given order, optimizers
// alphabetically (lasso, sr3, stlsq), configs nested in declared parameter
// order.
std::vector<Cell> enumerate_cells(const GridSpec& spec) {
    std::vector<Cell> cells;
    for (const auto& lib : spec.libraries) {
        if (spec.lasso) {
            for (double alpha : spec.lasso->alpha)
                for (double tol : spec.lasso->tol) {
                    LassoConfig cfg;
                    cfg.alpha = alpha;
                    cfg.tol = tol;
                    cells.push_back({lib, cfg, {{"alpha", alpha}, {"tol", tol}}});
                }
        }
        if (spec.sr3) {
            for (Sr3Norm norm : spec.sr3->norms)
                for (double kappa : spec.sr3->kappa)
                    for (double nu : spec.sr3->nu) {
                        Sr3Config cfg;
                        cfg.kappa = kappa;
                        cfg.nu = nu;
                        cfg.norm = norm;
                        cells.push_back({lib, cfg, {{"kappa", kappa}, {"nu", nu}}});
                    }
        }
        if (spec.stlsq) {
            for (double lambda : spec.stlsq->lambda)
                for (double alpha : spec.stlsq->alpha) {
                    StlsqConfig cfg;
                    cfg.lambda = lambda;
                    cfg.alpha = alpha;
                    cells.push_back({lib, cfg, {{"lambda", lambda}, {"alpha", alpha}}});
                }
        }
    }
    return cells;
}

double sparsity_parameter(const GridRow& row) {
    auto get = [&](const char* key) {
        const auto it = row.params.find(key);
        return it == row.params.end() ? 0.0 : it->second;
    };
    if (row.optimizer == "lasso") return get("alpha");
    if (row.optimizer == "stlsq") return get("lambda");
    return get("kappa");
}

}  // namespace

GridResult run_grid(const std::vector<FrequencyChunk>& chunks, const GridSpec& spec,
                    int jobs) {
    spec.validate();
    if (chunks.empty()) throw DataError("run_grid: no chunks");

    const std::vector<Cell> cells = enumerate_cells(spec);
    GridResult result;
    result.rows.resize(cells.size());

    parallel_for(cells.size(), jobs, [&](std::size_t i) {
        const Cell& cell = cells[i];
        GridRow row;
        row.library = cell.library.name();
        row.optimizer = optimizer_label(cell.config);
        row.config = cell.config;
        row.params = cell.params;
        try {
            PipelineConfig cfg;
            cfg.smoothing = spec.smoothing;
            cfg.library = cell.library;
            cfg.optimizer = cell.config;
            cfg.divergence_bound_scale = spec.divergence_bound_scale;
            cfg.divergence_bound_floor = spec.divergence_bound_floor;
            cfg.active_threshold = spec.active_threshold;

            std::vector<EvaluationRecord> records;
            records.reserve(chunks.size());
            std::size_t n_converged = 0;
            for (const auto& chunk : chunks) {
                records.push_back(evaluate_chunk(chunk, cfg));
                if (records.back().fit_converged) ++n_converged;
            }
            row.report = aggregate(records);
            row.fit_converged_fraction =
                static_cast<double>(n_converged) / static_cast<double>(chunks.size());
            row.flagged_nonconverged = row.fit_converged_fraction <= 0.5;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        result.rows[i] = std::move(row);
    });
    return result;
}

BestConfigResult best_config(const GridResult& result, BestCriterion criterion) {
    if (result.rows.empty()) throw DataError("best_config: empty grid result");

    // Group rows by (library, optimizer) in first-appearance order.
    std::vector<std::pair<std::string, std::string>> group_order;
    std::map<std::pair<std::string, std::string>, std::vector<const GridRow*>> groups;
    for (const auto& row : result.rows) {
        const auto key = std::make_pair(row.library, row.optimizer);
        auto [it, inserted] = groups.try_emplace(key);
        if (inserted) group_order.push_back(key);
        it->second.push_back(&row);
    }

    BestConfigResult best;
    for (const auto& key : group_order) {
        const GridRow* chosen = nullptr;
        for (const GridRow* row : groups[key]) {
            if (!row->error.empty()) continue;
            double metric = 0.0;
            if (criterion == BestCriterion::MinRmse) {
                if (!row->report.mean_stable_rmse) continue;  // null rmse excluded
                metric = *row->report.mean_stable_rmse;
            } else {
                metric = -row->report.stability_fraction;
            }
            if (!chosen) {
                chosen = row;
                continue;
            }
            double chosen_metric = criterion == BestCriterion::MinRmse
                                       ? *chosen->report.mean_stable_rmse
                                       : -chosen->report.stability_fraction;
            if (metric < chosen_metric ||
                (metric == chosen_metric &&
                 sparsity_parameter(*row) > sparsity_parameter(*chosen))) {
                chosen = row;
            }
            // Remaining ties keep the earlier grid position.
        }
        if (chosen)
            best.rows.push_back(*chosen);
        else
            best.failed_groups.push_back(key.first + "/" + key.second);
    }
    return best;
}

HeatmapTable emit_heatmap(const GridResult& result, const std::string& optimizer,
                          const std::string& library, const std::string& param_x,
                          const std::string& param_y, HeatmapMetric metric) {
    static const std::map<std::string, std::set<std::string>> axes_by_optimizer = {
        {"lasso", {"alpha", "tol"}},
        {"stlsq", {"lambda", "alpha"}},
        {"sr3_l0", {"kappa", "nu"}},
        {"sr3_l1", {"kappa", "nu"}},
        {"sr3_l2", {"kappa", "nu"}},
    };
    const auto axes_it = axes_by_optimizer.find(optimizer);
    if (axes_it == axes_by_optimizer.end())
        throw ConfigError("heatmap: unknown optimizer '" + optimizer + "'");
    if (!axes_it->second.count(param_x))
        throw ConfigError("heatmap: '" + param_x + "' is not a " + optimizer + " parameter");
    if (!axes_it->second.count(param_y))
        throw ConfigError("heatmap: '" + param_y + "' is not a " + optimizer + " parameter");
    if (param_x == param_y) throw ConfigError("heatmap: axes must differ");

    std::vector<const GridRow*> rows;
    for (const auto& row : result.rows)
        if (row.optimizer == optimizer && row.library == library) rows.push_back(&row);
    if (rows.empty())
        throw ConfigError("heatmap: no rows for " + optimizer + "/" + library);

    std::set<double> xs, ys;
    std::set<std::pair<double, double>> seen;
    HeatmapTable table;
    table.param_x = param_x;
    table.param_y = param_y;
    table.metric = metric;
    for (const GridRow* row : rows) {
        const double x = row->params.at(param_x);
        const double y = row->params.at(param_y);
        if (!seen.insert({x, y}).second)
            throw ConfigError("heatmap: duplicate cell at (" + std::to_string(x) + ", " +
                              std::to_string(y) + "); filter the grid first");
        xs.insert(x);
        ys.insert(y);
        HeatmapCell cell;
        cell.x = x;
        cell.y = y;
        if (row->error.empty()) {
            if (metric == HeatmapMetric::Rmse)
                cell.value = row->report.mean_stable_rmse;
            else
                cell.value = row->report.stability_fraction;
        }
        table.cells.push_back(cell);
    }
    if (xs.size() < 2) throw ConfigError("heatmap: axis '" + param_x + "' does not vary");
    if (ys.size() < 2) throw ConfigError("heatmap: axis '" + param_y + "' does not vary");

    std::sort(table.cells.begin(), table.cells.end(), [](const HeatmapCell& a,
                                                         const HeatmapCell& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    return table;
}

}  // namespace powersindy
