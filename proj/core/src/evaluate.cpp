#include "powersindy/evaluate.hpp"

#include <cmath>

#include "powersindy/errors.hpp"

namespace powersindy {

double rmse(const Eigen::VectorXd& sim_omega, const Eigen::VectorXd& ref_omega) {
    if (sim_omega.size() != ref_omega.size())
        throw DataError("rmse: length mismatch (" + std::to_string(sim_omega.size()) +
                        " vs " + std::to_string(ref_omega.size()) + ")");
    if (sim_omega.size() == 0) throw DataError("rmse: empty input");
    return std::sqrt((sim_omega - ref_omega).squaredNorm() /
                     static_cast<double>(sim_omega.size()));
}

std::vector<int> active_features(const CoefficientMatrix& coeffs, double threshold) {
    if (threshold < 0.0) throw ConfigError("active_features: threshold must be >= 0");
    std::vector<int> counts(static_cast<std::size_t>(coeffs.values.cols()), 0);
    for (Eigen::Index t = 0; t < coeffs.values.cols(); ++t)
        for (Eigen::Index j = 0; j < coeffs.values.rows(); ++j)
            if (std::abs(coeffs.values(j, t)) >= threshold)
                ++counts[static_cast<std::size_t>(t)];
    return counts;
}

AggregateReport aggregate(const std::vector<EvaluationRecord>& records) {
    if (records.empty()) throw DataError("aggregate: no records");
    AggregateReport report;
    report.n_chunks = records.size();

    double rmse_sum = 0.0;
    std::size_t n_stable = 0;
    double active_sum = 0.0;
    for (const auto& r : records) {
        active_sum += r.n_active_features;
        if (r.stable) {
            if (!r.rmse) throw DataError("aggregate: stable record without rmse");
            rmse_sum += *r.rmse;
            ++n_stable;
        }
    }
    report.stability_fraction =
        static_cast<double>(n_stable) / static_cast<double>(records.size());
    report.mean_active_features = active_sum / static_cast<double>(records.size());
    if (n_stable > 0) {
        const double mean = rmse_sum / static_cast<double>(n_stable);
        report.mean_stable_rmse = mean;
        double sq = 0.0;
        for (const auto& r : records)
            if (r.stable) sq += (*r.rmse - mean) * (*r.rmse - mean);
        report.rmse_std = std::sqrt(sq / static_cast<double>(n_stable));
    }
    return report;
}

double divergence_bound(const AngularSeries& raw, const PipelineConfig& cfg) {
    const double peak = raw.omega.size() ? raw.omega.cwiseAbs().maxCoeff() : 0.0;
    return std::max(cfg.divergence_bound_scale * peak, cfg.divergence_bound_floor);
}

FittedModel fit_chunk(const FrequencyChunk& chunk, const PipelineConfig& cfg) {
    const AngularSeries raw = to_angular(chunk);
    const StateTrajectory traj = build_trajectory(raw, cfg.smoothing);
    const FeatureMatrix features = build_feature_matrix(traj, cfg.library);
    FittedModel model;
    model.spec = cfg.library;
    model.coefficients = fit(features, traj.omega_dot, cfg.optimizer);
    return model;
}

EvaluationRecord evaluate_chunk(const FrequencyChunk& chunk, const PipelineConfig& cfg) {
    try {
        const AngularSeries raw = to_angular(chunk);
        const StateTrajectory traj = build_trajectory(raw, cfg.smoothing);
        const FeatureMatrix features = build_feature_matrix(traj, cfg.library);

        FittedModel model;
        model.spec = cfg.library;
        model.coefficients = fit(features, traj.omega_dot, cfg.optimizer);

        const double bound = divergence_bound(raw, cfg);
        const SimulationResult sim = simulate_model(model, {0.0, traj.omega[0]}, traj.dt,
                                                    static_cast<std::size_t>(raw.omega.size()),
                                                    bound);

        EvaluationRecord record;
        record.chunk_id = chunk.chunk_id;
        record.stable = sim.stable;
        record.fit_converged = model.coefficients.converged;
        record.n_active_features =
            active_features(model.coefficients, cfg.active_threshold)[0];
        if (sim.stable) record.rmse = rmse(sim.trajectory.omega, raw.omega);
        return record;
    } catch (const ConfigError& e) {
        throw ConfigError("chunk " + chunk.chunk_id + ": " + e.what());
    } catch (const DataError& e) {
        throw DataError("chunk " + chunk.chunk_id + ": " + e.what());
    }
}

}  // namespace powersindy
