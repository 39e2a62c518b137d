#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "powersindy/preprocess.hpp"

namespace powersindy {

// Candidate-library description. States are (theta, omega) plus elapsed time T
// when include_time is set. Names follow the shorthand p<degree>[f<order>].
struct LibrarySpec {
    int poly_degree = 2;    // 1..3
    int fourier_order = 0;  // 0 or 1
    bool include_time = true;
    double time_scale = 1.0;  // rho in sin(rho*T), cos(rho*T)

    int n_states() const { return include_time ? 3 : 2; }
    std::string name() const;  // "p2", "p3", "p2f1", ...
    void validate() const;     // throws ConfigError (p3f1/p2f2 excluded)
};

struct FeatureMatrix {
    Eigen::MatrixXd values;          // rows = samples, cols = features
    std::vector<std::string> names;  // unique, one per column

    Eigen::Index n_features() const { return values.cols(); }
    // Index of the constant column ("1"), if present.
    std::optional<Eigen::Index> constant_column() const;
};

// C(n_states + d, d) monomials plus 2*fourier_order*n_states Fourier terms.
// Throws ConfigError when n_states disagrees with the spec or the degree is
// unsupported.
int feature_count(const LibrarySpec& spec, int n_states);
int feature_count(const LibrarySpec& spec);

// Column order: constant, linear terms (theta, omega, T), degree-2 monomials
// in graded lexicographic order, degree-3, then sin/cos per state in state
// order. Throws DataError on non-finite trajectory values.
FeatureMatrix build_feature_matrix(const StateTrajectory& traj, const LibrarySpec& spec);

// Evaluates all library functions at a single state; used by the simulator.
Eigen::VectorXd evaluate_features_at(const LibrarySpec& spec, double theta, double omega,
                                     double t);

std::vector<std::string> feature_names(const LibrarySpec& spec);

}  // namespace powersindy
