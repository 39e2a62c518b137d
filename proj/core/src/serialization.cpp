#include "powersindy/serialization.hpp"

#include <json.hpp>
#include <sstream>

#include "powersindy/csv.hpp"
#include "powersindy/errors.hpp"

namespace powersindy {

using nlohmann::json;

namespace {

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json json_of(const LibrarySpec& spec) {
    return json{{"poly_degree", spec.poly_degree},
                {"fourier_order", spec.fourier_order},
                {"include_time", spec.include_time},
                {"time_scale", spec.time_scale}};
}

json json_of(const OptimizerConfig& cfg) {
    json j;
    if (const auto* c = std::get_if<StlsqConfig>(&cfg)) {
        j["type"] = "stlsq";
        j["lambda"] = c->lambda;
        j["alpha"] = c->alpha;
        j["max_iter"] = c->max_iter;
    } else if (const auto* c = std::get_if<LassoConfig>(&cfg)) {
        j["type"] = "lasso";
        j["alpha"] = c->alpha;
        j["tol"] = c->tol;
        j["max_iter"] = c->max_iter;
    } else {
        const auto& s = std::get<Sr3Config>(cfg);
        j["type"] = "sr3";
        j["kappa"] = s.kappa;
        j["nu"] = s.nu;
        j["norm"] = sr3_norm_name(s.norm);
        j["tol"] = s.tol;
        j["max_iter"] = s.max_iter;
    }
    return j;
}

json json_of(const AggregateReport& report) {
    json j;
    j["mean_stable_rmse"] =
        report.mean_stable_rmse ? json(*report.mean_stable_rmse) : json(nullptr);
    j["rmse_std"] = report.rmse_std ? json(*report.rmse_std) : json(nullptr);
    j["stability_fraction"] = report.stability_fraction;
    j["mean_active_features"] = report.mean_active_features;
    j["n_chunks"] = report.n_chunks;
    return j;
}

json parse_json(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ConfigError(std::string(what) + ": invalid JSON");
    return j;
}

}  // namespace

std::string to_json(const IngestSummary& summary) {
    return dump(json{{"rows_read", summary.rows_read},
                     {"rows_dropped", summary.rows_dropped},
                     {"chunks_emitted", summary.chunks_emitted},
                     {"chunks_skipped", summary.chunks_skipped}});
}

std::string to_json(const LibrarySpec& spec) { return dump(json_of(spec)); }

std::string to_json(const OptimizerConfig& cfg) { return dump(json_of(cfg)); }

std::string to_json(const FittedModel& model) {
    json coeffs = json::array();
    for (Eigen::Index t = 0; t < model.coefficients.values.cols(); ++t) {
        json col = json::array();
        for (Eigen::Index r = 0; r < model.coefficients.values.rows(); ++r)
            col.push_back(model.coefficients.values(r, t));
        coeffs.push_back(col);
    }
    json j{{"library_spec", json_of(model.spec)},
           {"feature_names", model.coefficients.feature_names},
           {"coefficients", coeffs},
           {"converged", model.coefficients.converged},
           {"iterations", model.coefficients.iterations}};
    return dump(j);
}

std::string to_json(const AggregateReport& report) { return dump(json_of(report)); }

std::string to_json(const GridResult& result) {
    json rows = json::array();
    for (const auto& row : result.rows) {
        json r{{"library", row.library},
               {"optimizer", row.optimizer},
               {"config", json_of(row.config)},
               {"report", json_of(row.report)},
               {"fit_converged_fraction", row.fit_converged_fraction},
               {"flagged_nonconverged", row.flagged_nonconverged}};
        if (!row.error.empty()) r["error"] = row.error;
        rows.push_back(r);
    }
    return dump(json{{"rows", rows}});
}

LibrarySpec library_spec_from_json(const std::string& text) {
    const json j = parse_json(text, "library spec");
    LibrarySpec spec;
    spec.poly_degree = j.value("poly_degree", 2);
    spec.fourier_order = j.value("fourier_order", 0);
    spec.include_time = j.value("include_time", true);
    spec.time_scale = j.value("time_scale", 1.0);
    spec.validate();
    return spec;
}

OptimizerConfig optimizer_config_from_json(const std::string& text) {
    const json j = parse_json(text, "optimizer config");
    const std::string type = j.value("type", "");
    OptimizerConfig cfg;
    if (type == "stlsq") {
        StlsqConfig c;
        c.lambda = j.value("lambda", c.lambda);
        c.alpha = j.value("alpha", c.alpha);
        c.max_iter = j.value("max_iter", c.max_iter);
        cfg = c;
    } else if (type == "lasso") {
        LassoConfig c;
        c.alpha = j.value("alpha", c.alpha);
        c.tol = j.value("tol", c.tol);
        c.max_iter = j.value("max_iter", c.max_iter);
        cfg = c;
    } else if (type == "sr3") {
        Sr3Config c;
        c.kappa = j.value("kappa", c.kappa);
        c.nu = j.value("nu", c.nu);
        c.tol = j.value("tol", c.tol);
        c.max_iter = j.value("max_iter", c.max_iter);
        const std::string norm = j.value("norm", "l0");
        if (norm == "l0") c.norm = Sr3Norm::L0;
        else if (norm == "l1") c.norm = Sr3Norm::L1;
        else if (norm == "l2") c.norm = Sr3Norm::L2;
        else throw ConfigError("optimizer config: unknown sr3 norm '" + norm + "'");
        cfg = c;
    } else {
        throw ConfigError("optimizer config: unknown type '" + type + "'");
    }
    validate(cfg);
    return cfg;
}

FittedModel model_from_json(const std::string& text) {
    const json j = parse_json(text, "model");
    FittedModel model;
    model.spec = library_spec_from_json(j.at("library_spec").dump());
    const auto names = j.at("feature_names").get<std::vector<std::string>>();
    const auto& coeffs = j.at("coefficients");
    if (!coeffs.is_array() || coeffs.empty())
        throw ConfigError("model: coefficients must be a non-empty array of columns");
    model.coefficients.feature_names = names;
    model.coefficients.values.resize(static_cast<Eigen::Index>(names.size()),
                                     static_cast<Eigen::Index>(coeffs.size()));
    for (std::size_t t = 0; t < coeffs.size(); ++t) {
        if (coeffs[t].size() != names.size())
            throw ConfigError("model: coefficient column length mismatch");
        for (std::size_t r = 0; r < names.size(); ++r)
            model.coefficients.values(static_cast<Eigen::Index>(r),
                                      static_cast<Eigen::Index>(t)) =
                coeffs[t][r].get<double>();
    }
    model.coefficients.converged = j.value("converged", true);
    model.coefficients.iterations = j.value("iterations", 0);
    return model;
}

namespace {

std::string table_to_csv(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream out;
    csv::Writer writer(out);
    writer.row(header);
    for (const auto& row : rows) writer.row(row);
    return out.str();
}

}  // namespace

std::string sigma_sweep_csv(const SigmaSweepResult& result) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : result.rows)
        rows.push_back({csv::format_double(row.sigma), csv::format_double(row.mean_rmse),
                        std::to_string(row.n_stable), std::to_string(row.n_total)});
    return table_to_csv({"sigma", "mean_rmse", "n_stable", "n_total"}, rows);
}

std::string records_csv(const std::vector<EvaluationRecord>& records) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : records)
        rows.push_back({r.chunk_id, r.stable ? "true" : "false",
                        r.rmse ? csv::format_double(*r.rmse) : "",
                        std::to_string(r.n_active_features)});
    return table_to_csv({"chunk_id", "stable", "rmse", "n_active"}, rows);
}

std::string grid_csv(const GridResult& result) {
    const std::vector<std::string> param_cols = {"alpha", "tol", "lambda", "kappa", "nu"};
    std::vector<std::string> header = {"library", "optimizer"};
    header.insert(header.end(), param_cols.begin(), param_cols.end());
    header.insert(header.end(), {"mean_stable_rmse", "rmse_std", "stability_fraction",
                                 "mean_active_features", "n_chunks", "converged_fraction",
                                 "flagged", "error"});
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : result.rows) {
        std::vector<std::string> fields = {row.library, row.optimizer};
        for (const auto& col : param_cols) {
            const auto it = row.params.find(col);
            fields.push_back(it == row.params.end() ? ""
                                                    : csv::format_double(it->second));
        }
        const auto& rep = row.report;
        fields.push_back(rep.mean_stable_rmse ? csv::format_double(*rep.mean_stable_rmse)
                                              : "");
        fields.push_back(rep.rmse_std ? csv::format_double(*rep.rmse_std) : "");
        fields.push_back(csv::format_double(rep.stability_fraction));
        fields.push_back(csv::format_double(rep.mean_active_features));
        fields.push_back(std::to_string(rep.n_chunks));
        fields.push_back(csv::format_double(row.fit_converged_fraction));
        fields.push_back(row.flagged_nonconverged ? "true" : "false");
        fields.push_back(row.error);
        rows.push_back(std::move(fields));
    }
    return table_to_csv(header, rows);
}

std::string heatmap_csv(const HeatmapTable& table) {
    const std::string metric =
        table.metric == HeatmapMetric::Rmse ? "rmse" : "stability";
    std::vector<std::vector<std::string>> rows;
    for (const auto& cell : table.cells)
        rows.push_back({csv::format_double(cell.x), csv::format_double(cell.y),
                        cell.value ? csv::format_double(*cell.value) : ""});
    return table_to_csv({table.param_x, table.param_y, metric}, rows);
}

std::string trajectory_csv(const StateTrajectory& traj) {
    std::vector<std::vector<std::string>> rows;
    for (Eigen::Index i = 0; i < traj.omega.size(); ++i)
        rows.push_back({csv::format_double(traj.time[i]), csv::format_double(traj.theta[i]),
                        csv::format_double(traj.omega[i])});
    return table_to_csv({"t", "theta", "omega"}, rows);
}

std::string chunk_csv(const FrequencyChunk& chunk) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& s : chunk.samples)
        rows.push_back({std::to_string(s.timestamp), csv::format_double(s.frequency)});
    return table_to_csv({"timestamp", "frequency"}, rows);
}

std::string dataset_csv(const std::vector<FrequencyChunk>& chunks) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& chunk : chunks)
        for (const auto& s : chunk.samples)
            rows.push_back({std::to_string(s.timestamp), csv::format_double(s.frequency)});
    return table_to_csv({"timestamp", "frequency"}, rows);
}

}  // namespace powersindy
