#pragma once

#include <Eigen/Core>

#include "powersindy/ingest.hpp"

namespace powersindy {

enum class Boundary { Reflect, Nearest };

struct SmoothingConfig {
    double sigma = 60.0;             // seconds, > 0
    double truncation_radius = 4.0;  // multiples of sigma, >= 1
    Boundary boundary = Boundary::Reflect;

    void validate() const;  // throws ConfigError
};

// Filtered state (theta, omega, T) plus the estimated derivative of omega.
struct StateTrajectory {
    Eigen::VectorXd theta;      // rad
    Eigen::VectorXd omega;      // rad/s
    Eigen::VectorXd time;       // s, time[i] = i*dt
    Eigen::VectorXd omega_dot;  // rad/s^2 (may be empty for simulated output)
    double dt = 1.0;

    Eigen::Index size() const { return omega.size(); }
};

// Discrete Gaussian smoothing. Kernel sd is sigma/dt samples, truncated at
// +-truncation_radius*sigma and renormalized to sum exactly 1; output has the
// input's length. Throws DataError on non-finite input.
Eigen::VectorXd gaussian_filter(const Eigen::VectorXd& series, const SmoothingConfig& cfg,
                                double dt = 1.0);

// The discrete kernel itself (odd length 2r+1), exposed for tests.
Eigen::VectorXd gaussian_kernel(double sigma_samples, double truncation_radius);

// Second-order central differences; one-sided second-order at both ends.
Eigen::VectorXd estimate_derivative(const Eigen::VectorXd& series, double dt);

// Cumulative trapezoidal integral starting from theta0.
Eigen::VectorXd integrate_angle(const Eigen::VectorXd& omega, double dt, double theta0);

// smooth -> integrate -> differentiate; theta(0) = 0.
StateTrajectory build_trajectory(const AngularSeries& series, const SmoothingConfig& cfg);

}  // namespace powersindy
