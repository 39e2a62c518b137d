#include <doctest.h>

#include <cmath>
#include <random>

#include "powersindy/errors.hpp"
#include "powersindy/preprocess.hpp"
#include "test_helpers.hpp"

using namespace powersindy;

TEST_CASE("gaussian kernel sums to one") {
    for (double sigma : {0.5, 1.0, 10.0, 60.0, 500.0}) {
        const auto kernel = gaussian_kernel(sigma, 4.0);
        CHECK(std::abs(kernel.sum() - 1.0) < 1e-15);
    }
}

TEST_CASE("gaussian_filter preserves constants") {
    SmoothingConfig cfg{7.0, 4.0, Boundary::Reflect};
    const Eigen::VectorXd series = Eigen::VectorXd::Constant(200, 3.25);
    const auto out = gaussian_filter(series, cfg);
    CHECK((out.array() - 3.25).abs().maxCoeff() < 1e-13);
}

TEST_CASE("gaussian_filter of a centered impulse reproduces the kernel") {
    SmoothingConfig cfg{10.0, 4.0, Boundary::Reflect};
    Eigen::VectorXd series = Eigen::VectorXd::Zero(1001);
    series[500] = 1.0;
    const auto out = gaussian_filter(series, cfg);
    const auto kernel = gaussian_kernel(10.0, 4.0);
    const Eigen::Index radius = (kernel.size() - 1) / 2;
    double max_err = 0.0;
    for (Eigen::Index i = 0; i < series.size(); ++i) {
        const Eigen::Index k = i - 500;
        const double expected =
            std::abs(k) <= radius ? kernel[k + radius] : 0.0;
        max_err = std::max(max_err, std::abs(out[i] - expected));
    }
    CHECK(max_err < 1e-12);
}

TEST_CASE("gaussian_filter keeps a linear ramp exact in the interior") {
    SmoothingConfig cfg{6.0, 4.0, Boundary::Reflect};
    Eigen::VectorXd ramp(400);
    for (Eigen::Index i = 0; i < ramp.size(); ++i) ramp[i] = static_cast<double>(i);
    const auto out = gaussian_filter(ramp, cfg);
    const Eigen::Index w = static_cast<Eigen::Index>(std::ceil(4.0 * 6.0));
    double max_err = 0.0;
    for (Eigen::Index i = w; i < ramp.size() - w; ++i)
        max_err = std::max(max_err, std::abs(out[i] - ramp[i]));
    CHECK(max_err < 1e-9);
}

TEST_CASE("gaussian_filter is linear") {
    std::mt19937_64 rng(5);
    SmoothingConfig cfg{9.0, 4.0, Boundary::Reflect};
    const auto x = testutil::random_vector(300, rng);
    const auto y = testutil::random_vector(300, rng);
    const double a = 1.7, b = -0.3;
    const Eigen::VectorXd lhs = gaussian_filter(a * x + b * y, cfg);
    const Eigen::VectorXd rhs = a * gaussian_filter(x, cfg) + b * gaussian_filter(y, cfg);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("gaussian_filter boundary modes and errors") {
    SmoothingConfig cfg{3.0, 4.0, Boundary::Nearest};
    Eigen::VectorXd series = Eigen::VectorXd::LinSpaced(50, 0.0, 1.0);
    CHECK_NOTHROW(gaussian_filter(series, cfg));
    // Kernel wider than the series still works via index folding.
    cfg.boundary = Boundary::Reflect;
    cfg.sigma = 500.0;
    CHECK_NOTHROW(gaussian_filter(series, cfg));

    series[10] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(gaussian_filter(series, cfg), DataError);
    CHECK_THROWS_AS(gaussian_filter(Eigen::VectorXd::Ones(5), SmoothingConfig{-1.0, 4.0}),
                    ConfigError);
}

TEST_CASE("estimate_derivative is exact for linear sequences") {
    Eigen::VectorXd series(20);
    for (Eigen::Index i = 0; i < 20; ++i) series[i] = 3.0 * static_cast<double>(i);
    const auto d = estimate_derivative(series, 1.0);
    CHECK((d.array() - 3.0).abs().maxCoeff() < 1e-12);
}

TEST_CASE("estimate_derivative is exact for quadratics in the interior") {
    Eigen::VectorXd series(50);
    for (Eigen::Index i = 0; i < 50; ++i)
        series[i] = static_cast<double>(i) * static_cast<double>(i);
    const auto d = estimate_derivative(series, 1.0);
    for (Eigen::Index i = 1; i < 49; ++i)
        CHECK(d[i] == doctest::Approx(2.0 * static_cast<double>(i)).epsilon(1e-13));
    // One-sided second-order formulas are exact for quadratics too.
    CHECK(d[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(d[49] == doctest::Approx(98.0).epsilon(1e-13));
}

TEST_CASE("estimate_derivative error on sin stays below the h^2 bound") {
    Eigen::VectorXd series(900);
    for (Eigen::Index i = 0; i < 900; ++i) series[i] = std::sin(0.01 * static_cast<double>(i));
    const auto d = estimate_derivative(series, 1.0);
    double max_err = 0.0;
    for (Eigen::Index i = 1; i < 899; ++i)
        max_err = std::max(max_err,
                           std::abs(d[i] - 0.01 * std::cos(0.01 * static_cast<double>(i))));
    CHECK(max_err < 2e-7);
}

TEST_CASE("integrate_angle basics") {
    CHECK((integrate_angle(Eigen::VectorXd::Zero(10), 1.0, 0.0).array() == 0.0).all());
    const auto theta = integrate_angle(Eigen::VectorXd::Ones(10), 1.0, 0.0);
    for (Eigen::Index i = 0; i < 10; ++i)
        CHECK(theta[i] == doctest::Approx(static_cast<double>(i)).epsilon(1e-15));
}

TEST_CASE("integrate_angle tracks the analytic integral of cos") {
    Eigen::VectorXd omega(900);
    for (Eigen::Index i = 0; i < 900; ++i) omega[i] = std::cos(0.01 * static_cast<double>(i));
    const auto theta = integrate_angle(omega, 1.0, 0.0);
    double max_err = 0.0;
    for (Eigen::Index i = 0; i < 900; ++i)
        max_err = std::max(max_err,
                           std::abs(theta[i] - 100.0 * std::sin(0.01 * static_cast<double>(i))));
    CHECK(max_err < 1e-3);
}

TEST_CASE("derivative of the integral recovers a smooth sequence") {
    Eigen::VectorXd omega(900);
    for (Eigen::Index i = 0; i < 900; ++i) omega[i] = std::cos(0.01 * static_cast<double>(i));
    const auto back = estimate_derivative(integrate_angle(omega, 1.0, 0.0), 1.0);
    double max_err = 0.0;
    for (Eigen::Index i = 1; i < 899; ++i)
        max_err = std::max(max_err, std::abs(back[i] - omega[i]));
    CHECK(max_err < 1e-6);
}

TEST_CASE("build_trajectory of a zero series is zero except time") {
    AngularSeries series{Eigen::VectorXd::Zero(100), 1.0};
    const auto traj = build_trajectory(series, SmoothingConfig{2.0});
    CHECK(traj.theta.cwiseAbs().maxCoeff() == 0.0);
    CHECK(traj.omega.cwiseAbs().maxCoeff() == 0.0);
    CHECK(traj.omega_dot.cwiseAbs().maxCoeff() == 0.0);
    for (Eigen::Index i = 0; i < traj.time.size(); ++i)
        CHECK(traj.time[i] == static_cast<double>(i));
}

TEST_CASE("build_trajectory derivative matches the analytic rate of a slow oscillator") {
    // omega(t) = exp(-0.002 t) cos(0.02 t); light smoothing keeps it intact.
    const double decay = 0.002, freq = 0.02;
    AngularSeries series;
    series.dt = 1.0;
    series.omega.resize(900);
    for (Eigen::Index i = 0; i < 900; ++i) {
        const double t = static_cast<double>(i);
        series.omega[i] = std::exp(-decay * t) * std::cos(freq * t);
    }
    const auto traj = build_trajectory(series, SmoothingConfig{1.0});
    double max_err = 0.0;
    for (Eigen::Index i = 0; i < 900; ++i) {
        const double t = static_cast<double>(i);
        const double analytic = std::exp(-decay * t) *
                                (-decay * std::cos(freq * t) - freq * std::sin(freq * t));
        max_err = std::max(max_err, std::abs(traj.omega_dot[i] - analytic));
    }
    CHECK(max_err < 1e-4);
}

TEST_CASE("sigma = 60 smoothing suppresses white-noise variance below 2%") {
    std::mt19937_64 rng(17);
    AngularSeries series{testutil::random_vector(900, rng), 1.0};
    const auto traj = build_trajectory(series, SmoothingConfig{60.0});
    auto variance = [](const Eigen::VectorXd& v) {
        const double mean = v.mean();
        return (v.array() - mean).square().sum() / static_cast<double>(v.size());
    };
    CHECK(variance(traj.omega) / variance(series.omega) < 0.02);
}
