#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "powersindy/ingest.hpp"
#include "powersindy/preprocess.hpp"
#include "powersindy/regression.hpp"

namespace powersindy {

// Piecewise-constant schedule: value of the last breakpoint at or before t,
// 0 before the first breakpoint. Breakpoints must be strictly increasing.
struct PiecewiseConstant {
    std::vector<std::pair<double, double>> steps;  // (t_start, value)

    double at(double t) const;
    void validate() const;  // throws ConfigError
};

// Stochastic swing-equation parameters:
//   dtheta/dt = omega
//   domega/dt = -c_omega*omega - c_theta*theta + delta_p(t) + epsilon*xi(t)
struct SwingParams {
    double c_omega = 0.0;  // damping, 1/s, >= 0
    double c_theta = 0.0;  // stiffness, 1/s^2, >= 0
    double epsilon = 0.0;  // noise amplitude, rad/s^(3/2), >= 0
    PiecewiseConstant delta_p;

    void validate() const;
};

struct SimulationResult {
    StateTrajectory trajectory;  // omega_dot left empty
    bool stable = true;
    std::optional<int> divergence_step;  // index of the first violating sample
};

// Identified model: sparse coefficients for the omega-dot equation over a
// candidate library.
struct FittedModel {
    LibrarySpec spec;
    CoefficientMatrix coefficients;  // single target column (omega_dot)
};

// Classical fixed-step RK4 integration of
//   theta' = omega, omega' = sum_j Xi_j * phi_j(theta, omega, t).
// Produces n_steps samples including the initial state; halts and flags
// unstable at the first non-finite value or |omega| > bound.
SimulationResult simulate_model(const FittedModel& model, std::pair<double, double> x0,
                                double dt, std::size_t n_steps, double bound);

// Euler-Maruyama integration of the stochastic swing equation with a seeded
// generator; n_steps samples including the initial state.
StateTrajectory euler_maruyama_swing(const SwingParams& params, std::pair<double, double> x0,
                                     double dt, std::size_t n_steps, std::uint64_t seed);

struct SyntheticConfig {
    SwingParams params;
    std::size_t n_chunks = 1;
    std::size_t chunk_len = 900;
    double dt = 1.0;  // EM step; must divide the 1 s sample interval
    double f_ref = 50.0;
    double theta0_sd = 0.0;  // per-chunk N(0, sd^2) initial bulk angle
    double omega0_sd = 0.0;  // per-chunk N(0, sd^2) initial angular deviation
    // When set, |omega0| is drawn uniformly from [lo, hi] with a random sign
    // instead of the Gaussian above.
    std::optional<std::pair<double, double>> omega0_uniform_abs;
    std::uint64_t seed = 0;
};

// n_chunks independent EM trajectories sampled at 1 Hz and converted back to
// frequency via f = f_ref + omega/(2*pi). Chunk k uses seed + k, so parallel
// and serial generation agree.
std::vector<FrequencyChunk> generate_synthetic_dataset(const SyntheticConfig& cfg);

}  // namespace powersindy
