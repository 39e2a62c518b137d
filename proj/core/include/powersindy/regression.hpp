#pragma once

#include <Eigen/Core>
#include <string>
#include <variant>
#include <vector>

#include "powersindy/library.hpp"

namespace powersindy {

struct StlsqConfig {
    double lambda = 1e-6;  // hard threshold on coefficient magnitude, >= 0
    double alpha = 1e-6;   // ridge weight, >= 0
    int max_iter = 20;
};

struct LassoConfig {
    double alpha = 1e-6;  // L1 weight in ||Theta*Xi - Xdot||^2 + alpha*||Xi||_1
    double tol = 1e-6;    // max standardized coefficient change per sweep
    int max_iter = 10000;
};

enum class Sr3Norm { L0, L1, L2 };

struct Sr3Config {
    double kappa = 1e-6;  // sparsity weight, >= 0
    double nu = 1.0;      // relaxation weight, > 0
    Sr3Norm norm = Sr3Norm::L0;
    double tol = 1e-12;  // on ||W_{k+1} - W_k||_F
    int max_iter = 10000;
};

using OptimizerConfig = std::variant<StlsqConfig, LassoConfig, Sr3Config>;

// "stlsq", "lasso", "sr3_l0", "sr3_l1", "sr3_l2"
std::string optimizer_label(const OptimizerConfig& cfg);
std::string sr3_norm_name(Sr3Norm norm);
void validate(const OptimizerConfig& cfg);  // throws ConfigError

struct CoefficientMatrix {
    Eigen::MatrixXd values;  // rows = features, cols = target derivatives
    std::vector<std::string> feature_names;
    bool converged = true;
    int iterations = 0;

    // SR3 diagnostics: the dense data-fit iterate Xi and the objective trace.
    Eigen::MatrixXd sr3_xi;                // empty unless fitted by sr3
    std::vector<double> sr3_objective;     // Eq.-(9) objective per iteration

    int n_features() const { return static_cast<int>(values.rows()); }
};

// min ||Theta*Xi - Xdot||^2 + alpha*||Xi||^2 per target column, solved with a
// QR factorization of the stacked regularized system. alpha = 0 is plain
// least squares and throws SingularMatrixError naming dependent columns when
// Theta is rank deficient.
CoefficientMatrix ridge_solve(const FeatureMatrix& theta_mat, const Eigen::MatrixXd& xdot,
                              double alpha);

// Sequentially thresholded least squares. The constant column is never
// thresholded. Returns the all-zero model (converged) when the active set
// empties.
CoefficientMatrix stlsq(const FeatureMatrix& theta_mat, const Eigen::MatrixXd& xdot,
                        const StlsqConfig& cfg);

// Cyclic coordinate descent with soft thresholding on internally standardized
// features; the constant column is excluded from standardization and penalty.
CoefficientMatrix lasso(const FeatureMatrix& theta_mat, const Eigen::MatrixXd& xdot,
                        const LassoConfig& cfg);

// Sparse relaxed regularized regression: alternate the closed-form Xi step
// with the proximal W step until ||W_{k+1} - W_k||_F < tol. Returns W; the
// constant row passes through the prox unpenalized.
CoefficientMatrix sr3(const FeatureMatrix& theta_mat, const Eigen::MatrixXd& xdot,
                      const Sr3Config& cfg);

CoefficientMatrix fit(const FeatureMatrix& theta_mat, const Eigen::MatrixXd& xdot,
                      const OptimizerConfig& cfg);

// Scalar proximal operators used by the SR3 W step.
double prox_l0(double x, double threshold);       // hard threshold
double prox_l1(double x, double threshold);       // soft threshold
double prox_l2(double x, double two_kappa_over_nu);  // x / (1 + 2*kappa/nu)

}  // namespace powersindy
