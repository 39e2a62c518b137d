#include "powersindy/simulate.hpp"

#include <cmath>
#include <random>

#include "powersindy/errors.hpp"

namespace powersindy {

double PiecewiseConstant::at(double t) const {
    double value = 0.0;
    for (const auto& [start, v] : steps) {
        if (t < start) break;
        value = v;
    }
    return value;
}

void PiecewiseConstant::validate() const {
    for (std::size_t i = 1; i < steps.size(); ++i)
        if (!(steps[i].first > steps[i - 1].first))
            throw ConfigError("delta_p: breakpoints must be strictly increasing");
}

void SwingParams::validate() const {
    if (c_omega < 0.0) throw ConfigError("swing: c_omega must be >= 0");
    if (c_theta < 0.0) throw ConfigError("swing: c_theta must be >= 0");
    if (epsilon < 0.0) throw ConfigError("swing: epsilon must be >= 0");
    delta_p.validate();
}

SimulationResult simulate_model(const FittedModel& model, std::pair<double, double> x0,
                                double dt, std::size_t n_steps, double bound) {
    if (!(bound > 0.0)) throw ConfigError("simulate: bound must be > 0");
    if (n_steps == 0) throw ConfigError("simulate: n_steps must be >= 1");
    model.spec.validate();
    if (model.coefficients.values.rows() != feature_count(model.spec))
        throw ConfigError("simulate: coefficient rows do not match the library");
    const Eigen::VectorXd coef = model.coefficients.values.col(0);

    auto omega_dot = [&](double theta, double omega, double t) {
        return coef.dot(evaluate_features_at(model.spec, theta, omega, t));
    };

    SimulationResult result;
    auto& traj = result.trajectory;
    traj.dt = dt;
    traj.theta.resize(static_cast<Eigen::Index>(n_steps));
    traj.omega.resize(static_cast<Eigen::Index>(n_steps));
    traj.time.resize(static_cast<Eigen::Index>(n_steps));

    double theta = x0.first;
    double omega = x0.second;
    Eigen::Index written = 0;
    for (std::size_t k = 0; k < n_steps; ++k) {
        const double t = dt * static_cast<double>(k);
        traj.theta[written] = theta;
        traj.omega[written] = omega;
        traj.time[written] = t;
        ++written;
        if (!std::isfinite(theta) || !std::isfinite(omega) || std::abs(omega) > bound) {
            result.stable = false;
            result.divergence_step = static_cast<int>(k);
            break;
        }
        if (k + 1 == n_steps) break;

        // theta' = omega, omega' = f(theta, omega, t)
        const double k1t = omega;
        const double k1w = omega_dot(theta, omega, t);
        const double k2t = omega + 0.5 * dt * k1w;
        const double k2w = omega_dot(theta + 0.5 * dt * k1t, omega + 0.5 * dt * k1w,
                                     t + 0.5 * dt);
        const double k3t = omega + 0.5 * dt * k2w;
        const double k3w = omega_dot(theta + 0.5 * dt * k2t, omega + 0.5 * dt * k2w,
                                     t + 0.5 * dt);
        const double k4t = omega + dt * k3w;
        const double k4w = omega_dot(theta + dt * k3t, omega + dt * k3w, t + dt);
        theta += dt / 6.0 * (k1t + 2.0 * k2t + 2.0 * k3t + k4t);
        omega += dt / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
    }
    traj.theta.conservativeResize(written);
    traj.omega.conservativeResize(written);
    traj.time.conservativeResize(written);
    return result;
}

StateTrajectory euler_maruyama_swing(const SwingParams& params, std::pair<double, double> x0,
                                     double dt, std::size_t n_steps, std::uint64_t seed) {
    params.validate();
    if (!(dt > 0.0)) throw ConfigError("euler_maruyama: dt must be > 0");
    if (n_steps == 0) throw ConfigError("euler_maruyama: n_steps must be >= 1");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double noise_scale = params.epsilon * std::sqrt(dt);

    StateTrajectory traj;
    traj.dt = dt;
    traj.theta.resize(static_cast<Eigen::Index>(n_steps));
    traj.omega.resize(static_cast<Eigen::Index>(n_steps));
    traj.time.resize(static_cast<Eigen::Index>(n_steps));

    double theta = x0.first;
    double omega = x0.second;
    for (std::size_t k = 0; k < n_steps; ++k) {
        const double t = dt * static_cast<double>(k);
        traj.theta[static_cast<Eigen::Index>(k)] = theta;
        traj.omega[static_cast<Eigen::Index>(k)] = omega;
        traj.time[static_cast<Eigen::Index>(k)] = t;
        if (k + 1 == n_steps) break;
        const double z = params.epsilon > 0.0 ? normal(rng) : 0.0;
        const double omega_next =
            omega + dt * (-params.c_omega * omega - params.c_theta * theta +
                          params.delta_p.at(t)) +
            noise_scale * z;
        theta += dt * omega;
        omega = omega_next;
    }
    return traj;
}

std::vector<FrequencyChunk> generate_synthetic_dataset(const SyntheticConfig& cfg) {
    cfg.params.validate();
    if (cfg.n_chunks < 1) throw ConfigError("synthetic: n_chunks must be >= 1");
    if (cfg.chunk_len < 2) throw ConfigError("synthetic: chunk_len must be >= 2");
    const double sub_real = 1.0 / cfg.dt;
    const auto substeps = static_cast<std::size_t>(std::llround(sub_real));
    if (substeps < 1 || std::abs(sub_real - static_cast<double>(substeps)) > 1e-9)
        throw ConfigError("synthetic: dt must divide the 1 s sample interval");

    constexpr double two_pi = 6.283185307179586476925286766559;
    std::vector<FrequencyChunk> chunks;
    chunks.reserve(cfg.n_chunks);
    for (std::size_t c = 0; c < cfg.n_chunks; ++c) {
        const std::uint64_t chunk_seed = cfg.seed + c;
        // Initial state from a dedicated stream so the path noise stays
        // aligned across configurations.
        std::mt19937_64 init_rng(chunk_seed ^ 0x9e3779b97f4a7c15ull);
        std::normal_distribution<double> normal(0.0, 1.0);
        double theta0 = cfg.theta0_sd > 0.0 ? cfg.theta0_sd * normal(init_rng) : 0.0;
        double omega0 = 0.0;
        if (cfg.omega0_uniform_abs) {
            const auto [lo, hi] = *cfg.omega0_uniform_abs;
            std::uniform_real_distribution<double> mag(lo, hi);
            const double sign = (init_rng() & 1u) ? 1.0 : -1.0;
            omega0 = sign * mag(init_rng);
        } else if (cfg.omega0_sd > 0.0) {
            omega0 = cfg.omega0_sd * normal(init_rng);
        }

        const std::size_t em_steps = (cfg.chunk_len - 1) * substeps + 1;
        const StateTrajectory path = euler_maruyama_swing(cfg.params, {theta0, omega0},
                                                          cfg.dt, em_steps, chunk_seed);

        FrequencyChunk chunk;
        chunk.f_ref = cfg.f_ref;
        const std::int64_t t0 =
            static_cast<std::int64_t>(c) * static_cast<std::int64_t>(cfg.chunk_len);
        chunk.chunk_id = format_chunk_id(t0);
        chunk.samples.resize(cfg.chunk_len);
        for (std::size_t i = 0; i < cfg.chunk_len; ++i) {
            const double omega = path.omega[static_cast<Eigen::Index>(i * substeps)];
            chunk.samples[i] = {t0 + static_cast<std::int64_t>(i),
                                cfg.f_ref + omega / two_pi};
        }
        chunks.push_back(std::move(chunk));
    }
    return chunks;
}

}  // namespace powersindy
