#include <doctest.h>

#include <set>

#include "powersindy/errors.hpp"
#include "powersindy/library.hpp"
#include "test_helpers.hpp"

using namespace powersindy;

namespace {

LibrarySpec make_spec(int degree, int fourier, bool time = true) {
    LibrarySpec spec;
    spec.poly_degree = degree;
    spec.fourier_order = fourier;
    spec.include_time = time;
    return spec;
}

StateTrajectory single_row(double theta, double omega, double t) {
    StateTrajectory traj;
    traj.theta = Eigen::VectorXd::Constant(1, theta);
    traj.omega = Eigen::VectorXd::Constant(1, omega);
    traj.time = Eigen::VectorXd::Constant(1, t);
    traj.omega_dot = Eigen::VectorXd::Zero(1);
    return traj;
}

}  // namespace

TEST_CASE("feature counts match the library definitions") {
    CHECK(feature_count(make_spec(2, 0), 3) == 10);
    CHECK(feature_count(make_spec(2, 1), 3) == 16);
    CHECK(feature_count(make_spec(3, 0), 3) == 20);
    CHECK(feature_count(make_spec(1, 0), 3) == 4);
    CHECK(feature_count(make_spec(2, 0, false), 2) == 6);
    CHECK(feature_count(make_spec(2, 1), 3) == feature_count(make_spec(2, 0), 3) + 6);
}

TEST_CASE("library validation rejects unsupported shapes") {
    CHECK_THROWS_AS(feature_count(make_spec(4, 0), 3), ConfigError);
    CHECK_THROWS_AS(feature_count(make_spec(3, 1), 3), ConfigError);
    CHECK_THROWS_AS((void)feature_count(make_spec(2, 2)), ConfigError);
    CHECK_THROWS_AS(feature_count(make_spec(2, 0), 2), ConfigError);  // state mismatch
    CHECK(make_spec(2, 1).name() == "p2f1");
    CHECK(make_spec(3, 0).name() == "p3");
}

TEST_CASE("p2f1 row at the origin") {
    const auto fm = build_feature_matrix(single_row(0, 0, 0), make_spec(2, 1));
    REQUIRE(fm.values.cols() == 16);
    const double expected[16] = {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1};
    for (Eigen::Index j = 0; j < 16; ++j)
        CHECK(fm.values(0, j) == doctest::Approx(expected[j]));
}

TEST_CASE("p2 row evaluates every monomial") {
    const auto fm = build_feature_matrix(single_row(1, 2, 3), make_spec(2, 0));
    REQUIRE(fm.values.cols() == 10);
    const double expected[10] = {1, 1, 2, 3, 1, 2, 3, 4, 6, 9};
    for (Eigen::Index j = 0; j < 10; ++j)
        CHECK(fm.values(0, j) == doctest::Approx(expected[j]));
    CHECK(fm.names[0] == "1");
    CHECK(fm.names[1] == "theta");
    CHECK(fm.names[2] == "omega");
    CHECK(fm.names[3] == "T");
    CHECK(fm.names[5] == "theta*omega");
}

TEST_CASE("every column matches an independent evaluation of its name") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    for (const auto& spec :
         {make_spec(1, 0), make_spec(2, 0), make_spec(3, 0), make_spec(2, 1),
          make_spec(2, 1, false), make_spec(3, 0, false)}) {
        for (int trial = 0; trial < 100; ++trial) {
            const double theta = uni(rng), omega = uni(rng), t = std::abs(uni(rng)) * 100;
            const auto fm = build_feature_matrix(single_row(theta, omega, t), spec);
            REQUIRE(fm.names.size() == static_cast<std::size_t>(fm.values.cols()));
            for (Eigen::Index j = 0; j < fm.values.cols(); ++j) {
                const double expected = testutil::evaluate_feature_name(
                    fm.names[static_cast<std::size_t>(j)], theta, omega, t);
                CHECK(std::abs(fm.values(0, j) - expected) < 1e-15 * std::max(1.0, std::abs(expected)));
            }
        }
    }
}

TEST_CASE("feature names are unique") {
    for (const auto& spec : {make_spec(3, 0), make_spec(2, 1)}) {
        const auto names = feature_names(spec);
        CHECK(std::set<std::string>(names.begin(), names.end()).size() == names.size());
    }
}

TEST_CASE("nested specs share a consistent prefix") {
    const auto traj = single_row(0.7, -1.3, 42.0);
    const auto p2 = build_feature_matrix(traj, make_spec(2, 0));
    const auto p3 = build_feature_matrix(traj, make_spec(3, 0));
    const auto p2f1 = build_feature_matrix(traj, make_spec(2, 1));
    for (Eigen::Index j = 0; j < p2.values.cols(); ++j) {
        CHECK(p2.names[static_cast<std::size_t>(j)] == p3.names[static_cast<std::size_t>(j)]);
        CHECK(p2.values(0, j) == p3.values(0, j));
        CHECK(p2.names[static_cast<std::size_t>(j)] ==
              p2f1.names[static_cast<std::size_t>(j)]);
        CHECK(p2.values(0, j) == p2f1.values(0, j));
    }
}

TEST_CASE("time_scale only affects the Fourier time terms") {
    auto spec = make_spec(2, 1);
    spec.time_scale = 0.01;
    const auto fm = build_feature_matrix(single_row(0.5, 0.25, 200.0), spec);
    // Polynomial T column stays raw.
    CHECK(fm.values(0, 3) == doctest::Approx(200.0));
    const auto names = fm.names;
    for (std::size_t j = 0; j < names.size(); ++j) {
        const double expected =
            testutil::evaluate_feature_name(names[j], 0.5, 0.25, 200.0, 0.01);
        CHECK(fm.values(0, static_cast<Eigen::Index>(j)) == doctest::Approx(expected));
    }
}

TEST_CASE("non-finite trajectory is rejected") {
    auto traj = single_row(1, 2, 3);
    traj.omega[0] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(build_feature_matrix(traj, make_spec(2, 0)), DataError);
}
