#include "powersindy/preprocess.hpp"

#include <cmath>

#include "powersindy/errors.hpp"

namespace powersindy {

void SmoothingConfig::validate() const {
    if (!(sigma > 0.0)) throw ConfigError("smoothing: sigma must be > 0");
    if (!(truncation_radius >= 1.0))
        throw ConfigError("smoothing: truncation_radius must be >= 1");
}

Eigen::VectorXd gaussian_kernel(double sigma_samples, double truncation_radius) {
    const Eigen::Index radius =
        std::max<Eigen::Index>(1, static_cast<Eigen::Index>(
                                      std::ceil(truncation_radius * sigma_samples)));
    Eigen::VectorXd kernel(2 * radius + 1);
    for (Eigen::Index k = -radius; k <= radius; ++k) {
        const double u = static_cast<double>(k) / sigma_samples;
        kernel[k + radius] = std::exp(-0.5 * u * u);
    }
    kernel /= kernel.sum();
    return kernel;
}

namespace {

// Folds an out-of-range index back into [0, n) by repeated reflection
// (scipy 'reflect': edge sample duplicated, period 2n).
inline Eigen::Index fold_reflect(Eigen::Index i, Eigen::Index n) {
    while (i < 0 || i >= n) {
        if (i < 0) i = -i - 1;
        if (i >= n) i = 2 * n - 1 - i;
    }
    return i;
}

inline Eigen::Index fold_nearest(Eigen::Index i, Eigen::Index n) {
    return i < 0 ? 0 : (i >= n ? n - 1 : i);
}

}  // namespace

Eigen::VectorXd gaussian_filter(const Eigen::VectorXd& series, const SmoothingConfig& cfg,
                                double dt) {
    cfg.validate();
    const Eigen::Index n = series.size();
    if (n < 2) throw DataError("gaussian_filter: series must have length >= 2");
    if (!series.allFinite()) throw DataError("gaussian_filter: non-finite input");

    const Eigen::VectorXd kernel = gaussian_kernel(cfg.sigma / dt, cfg.truncation_radius);
    const Eigen::Index radius = (kernel.size() - 1) / 2;

    // Padded copy so the convolution inner loop stays branch-free.
    Eigen::VectorXd padded(n + 2 * radius);
    const bool reflect = cfg.boundary == Boundary::Reflect;
    for (Eigen::Index i = -radius; i < n + radius; ++i) {
        const Eigen::Index j = reflect ? fold_reflect(i, n) : fold_nearest(i, n);
        padded[i + radius] = series[j];
    }

    Eigen::VectorXd out(n);
    for (Eigen::Index i = 0; i < n; ++i)
        out[i] = kernel.dot(padded.segment(i, kernel.size()));
    return out;
}

Eigen::VectorXd estimate_derivative(const Eigen::VectorXd& series, double dt) {
    const Eigen::Index n = series.size();
    if (n < 3) throw DataError("estimate_derivative: series must have length >= 3");
    Eigen::VectorXd d(n);
    const double inv2h = 1.0 / (2.0 * dt);
    d[0] = (-3.0 * series[0] + 4.0 * series[1] - series[2]) * inv2h;
    for (Eigen::Index i = 1; i < n - 1; ++i) d[i] = (series[i + 1] - series[i - 1]) * inv2h;
    d[n - 1] = (3.0 * series[n - 1] - 4.0 * series[n - 2] + series[n - 3]) * inv2h;
    return d;
}

Eigen::VectorXd integrate_angle(const Eigen::VectorXd& omega, double dt, double theta0) {
    Eigen::VectorXd theta(omega.size());
    if (omega.size() == 0) return theta;
    theta[0] = theta0;
    for (Eigen::Index i = 1; i < omega.size(); ++i)
        theta[i] = theta[i - 1] + dt * 0.5 * (omega[i - 1] + omega[i]);
    return theta;
}

StateTrajectory build_trajectory(const AngularSeries& series, const SmoothingConfig& cfg) {
    StateTrajectory traj;
    traj.dt = series.dt;
    traj.omega = gaussian_filter(series.omega, cfg, series.dt);
    traj.theta = integrate_angle(traj.omega, series.dt, 0.0);
    traj.time.resize(traj.omega.size());
    for (Eigen::Index i = 0; i < traj.time.size(); ++i)
        traj.time[i] = series.dt * static_cast<double>(i);
    traj.omega_dot = estimate_derivative(traj.omega, series.dt);
    return traj;
}

}  // namespace powersindy
