#include "powersindy/regression.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "powersindy/errors.hpp"

namespace powersindy {

std::string sr3_norm_name(Sr3Norm norm) {
    switch (norm) {
        case Sr3Norm::L0: return "l0";
        case Sr3Norm::L1: return "l1";
        case Sr3Norm::L2: return "l2";
    }
    return "l0";
}

std::string optimizer_label(const OptimizerConfig& cfg) {
    if (std::holds_alternative<StlsqConfig>(cfg)) return "stlsq";
    if (std::holds_alternative<LassoConfig>(cfg)) return "lasso";
    return "sr3_" + sr3_norm_name(std::get<Sr3Config>(cfg).norm);
}

void validate(const OptimizerConfig& cfg) {
    if (const auto* c = std::get_if<StlsqConfig>(&cfg)) {
        if (c->lambda < 0.0) throw ConfigError("stlsq: lambda must be >= 0");
        if (c->alpha < 0.0) throw ConfigError("stlsq: alpha must be >= 0");
        if (c->max_iter < 1) throw ConfigError("stlsq: max_iter must be >= 1");
    } else if (const auto* c = std::get_if<LassoConfig>(&cfg)) {
        if (c->alpha < 0.0) throw ConfigError("lasso: alpha must be >= 0");
        if (!(c->tol > 0.0)) throw ConfigError("lasso: tol must be > 0");
        if (c->max_iter < 1) throw ConfigError("lasso: max_iter must be >= 1");
    } else {
        const auto& s = std::get<Sr3Config>(cfg);
        if (s.kappa < 0.0) throw ConfigError("sr3: kappa must be >= 0");
        if (!(s.nu > 0.0)) throw ConfigError("sr3: nu must be > 0");
        if (!(s.tol > 0.0)) throw ConfigError("sr3: tol must be > 0");
        if (s.max_iter < 1) throw ConfigError("sr3: max_iter must be >= 1");
    }
}

double prox_l0(double x, double threshold) { return std::abs(x) > threshold ? x : 0.0; }

double prox_l1(double x, double threshold) {
    const double mag = std::abs(x) - threshold;
    return mag > 0.0 ? (x > 0.0 ? mag : -mag) : 0.0;
}

double prox_l2(double x, double two_kappa_over_nu) { return x / (1.0 + two_kappa_over_nu); }

namespace {

void check_shapes(const FeatureMatrix& theta_mat, const Eigen::MatrixXd& xdot) {
    if (theta_mat.values.rows() != xdot.rows())
        throw DataError("regression: row count mismatch between Theta and Xdot");
    if (theta_mat.values.rows() == 0) throw DataError("regression: empty design");
    if (static_cast<std::size_t>(theta_mat.values.cols()) != theta_mat.names.size())
        throw DataError("regression: feature names do not match columns");
    if (!theta_mat.values.allFinite() || !xdot.allFinite())
        throw DataError("regression: non-finite input");
}

// Least squares on the stacked system [Theta; sqrt(alpha) I] x = [y; 0],
// which minimizes ||Theta x - y||^2 + alpha ||x||^2 without forming the
// normal equations.
Eigen::MatrixXd solve_ridge_dense(const Eigen::MatrixXd& theta, const Eigen::MatrixXd& xdot,
                                  double alpha, const std::vector<std::string>& names) {
    const Eigen::Index n = theta.rows();
    const Eigen::Index p = theta.cols();
    if (alpha == 0.0) {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(theta);
        if (qr.rank() < p) {
            std::string cols;
            const auto perm = qr.colsPermutation().indices();
            for (Eigen::Index k = qr.rank(); k < p; ++k) {
                if (!cols.empty()) cols += ", ";
                const auto j = static_cast<std::size_t>(perm[k]);
                cols += j < names.size() ? names[j] : std::to_string(perm[k]);
            }
            throw SingularMatrixError(
                "ridge_solve: rank-deficient design with alpha = 0; dependent columns: " +
                cols);
        }
        return qr.solve(xdot);
    }
    Eigen::MatrixXd stacked(n + p, p);
    stacked.topRows(n) = theta;
    stacked.bottomRows(p) =
        std::sqrt(alpha) * Eigen::MatrixXd::Identity(p, p);
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n + p, xdot.cols());
    rhs.topRows(n) = xdot;
    return Eigen::HouseholderQR<Eigen::MatrixXd>(stacked).solve(rhs);
}

}  // namespace

CoefficientMatrix ridge_solve(const FeatureMatrix& theta_mat, const Eigen::MatrixXd& xdot,
                              double alpha) {
    check_shapes(theta_mat, xdot);
    if (alpha < 0.0) throw ConfigError("ridge_solve: alpha must be >= 0");
    CoefficientMatrix out;
    out.values = solve_ridge_dense(theta_mat.values, xdot, alpha, theta_mat.names);
    out.feature_names = theta_mat.names;
    out.converged = true;
    out.iterations = 1;
    return out;
}

CoefficientMatrix stlsq(const FeatureMatrix& theta_mat, const Eigen::MatrixXd& xdot,
                        const StlsqConfig& cfg) {
    validate(OptimizerConfig{cfg});
    check_shapes(theta_mat, xdot);
    const Eigen::Index p = theta_mat.values.cols();
    const auto constant = theta_mat.constant_column();

    CoefficientMatrix out;
    out.feature_names = theta_mat.names;
    out.values = Eigen::MatrixXd::Zero(p, xdot.cols());
    out.converged = true;
    out.iterations = 0;

    for (Eigen::Index target = 0; target < xdot.cols(); ++target) {
        std::vector<Eigen::Index> active(static_cast<std::size_t>(p));
        for (Eigen::Index j = 0; j < p; ++j) active[static_cast<std::size_t>(j)] = j;

        Eigen::VectorXd coef = Eigen::VectorXd::Zero(p);
        bool converged = false;
        int iterations = 0;
        while (iterations < cfg.max_iter) {
            ++iterations;
            Eigen::VectorXd sub_coef;
            if (static_cast<Eigen::Index>(active.size()) == p) {
                sub_coef = solve_ridge_dense(theta_mat.values, xdot.col(target), cfg.alpha,
                                             theta_mat.names);
            } else {
                Eigen::MatrixXd sub(theta_mat.values.rows(),
                                    static_cast<Eigen::Index>(active.size()));
                std::vector<std::string> sub_names(active.size());
                for (std::size_t k = 0; k < active.size(); ++k) {
                    sub.col(static_cast<Eigen::Index>(k)) = theta_mat.values.col(active[k]);
                    sub_names[k] = theta_mat.names[static_cast<std::size_t>(active[k])];
                }
                sub_coef = solve_ridge_dense(sub, xdot.col(target), cfg.alpha, sub_names);
            }

            std::vector<Eigen::Index> next;
            next.reserve(active.size());
            coef.setZero();
            for (std::size_t k = 0; k < active.size(); ++k) {
                const Eigen::Index j = active[k];
                const double v = sub_coef[static_cast<Eigen::Index>(k)];
                const bool keep =
                    (constant && j == *constant) || std::abs(v) >= cfg.lambda;
                if (keep) {
                    next.push_back(j);
                    coef[j] = v;
                }
            }
            if (next.size() == active.size()) {
                converged = true;
                break;
            }
            active = std::move(next);
            if (active.empty()) {
                converged = true;  // valid null model
                break;
            }
        }
        out.values.col(target) = coef;
        out.converged = out.converged && converged;
        out.iterations = std::max(out.iterations, iterations);
    }
    return out;
}

CoefficientMatrix lasso(const FeatureMatrix& theta_mat, const Eigen::MatrixXd& xdot,
                        const LassoConfig& cfg) {
    validate(OptimizerConfig{cfg});
    check_shapes(theta_mat, xdot);
    const Eigen::Index n = theta_mat.values.rows();
    const Eigen::Index p = theta_mat.values.cols();
    const auto constant = theta_mat.constant_column();

    // Standardize non-constant columns; with a constant column present the
    // target is centered and the intercept recovered afterwards.
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(p);
    Eigen::VectorXd scale = Eigen::VectorXd::Ones(p);
    Eigen::MatrixXd xs(n, p);
    for (Eigen::Index j = 0; j < p; ++j) {
        if (constant && j == *constant) {
            xs.col(j).setZero();  // excluded from the descent
            continue;
        }
        if (constant) mean[j] = theta_mat.values.col(j).mean();
        const Eigen::VectorXd centered = theta_mat.values.col(j).array() - mean[j];
        const double sd = std::sqrt(centered.squaredNorm() / static_cast<double>(n));
        scale[j] = sd > 0.0 ? sd : 1.0;
        xs.col(j) = centered / scale[j];
    }
    const Eigen::VectorXd col_sq = xs.colwise().squaredNorm().transpose();
    // Soft-threshold level for the unscaled objective ||r||^2 + alpha*||b||_1.
    const double threshold = cfg.alpha / 2.0;

    CoefficientMatrix out;
    out.feature_names = theta_mat.names;
    out.values = Eigen::MatrixXd::Zero(p, xdot.cols());
    out.converged = true;
    out.iterations = 0;

    for (Eigen::Index target = 0; target < xdot.cols(); ++target) {
        const double y_mean = constant ? xdot.col(target).mean() : 0.0;
        Eigen::VectorXd residual = (xdot.col(target).array() - y_mean).matrix();
        Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);

        bool converged = false;
        int sweeps = 0;
        while (sweeps < cfg.max_iter) {
            ++sweeps;
            double max_delta = 0.0;
            for (Eigen::Index j = 0; j < p; ++j) {
                if ((constant && j == *constant) || col_sq[j] <= 0.0) continue;
                const double z = xs.col(j).dot(residual) + col_sq[j] * beta[j];
                const double updated = prox_l1(z, threshold) / col_sq[j];
                const double delta = updated - beta[j];
                if (delta != 0.0) {
                    residual -= delta * xs.col(j);
                    beta[j] = updated;
                    max_delta = std::max(max_delta, std::abs(delta));
                }
            }
            if (max_delta < cfg.tol) {
                converged = true;
                break;
            }
        }

        Eigen::VectorXd raw = Eigen::VectorXd::Zero(p);
        double intercept_shift = 0.0;
        for (Eigen::Index j = 0; j < p; ++j) {
            if (constant && j == *constant) continue;
            raw[j] = beta[j] / scale[j];
            intercept_shift += raw[j] * mean[j];
        }
        if (constant) raw[*constant] = y_mean - intercept_shift;
        out.values.col(target) = raw;
        out.converged = out.converged && converged;
        out.iterations = std::max(out.iterations, sweeps);
    }
    return out;
}

CoefficientMatrix sr3(const FeatureMatrix& theta_mat, const Eigen::MatrixXd& xdot,
                      const Sr3Config& cfg) {
    validate(OptimizerConfig{cfg});
    check_shapes(theta_mat, xdot);
    const Eigen::Index n = theta_mat.values.rows();
    const Eigen::Index p = theta_mat.values.cols();
    const Eigen::Index targets = xdot.cols();
    const auto constant = theta_mat.constant_column();

    // Xi step: min 0.5||Theta Xi - Xdot||^2 + (nu/2)||Xi - W||^2, solved via a
    // single QR of the stacked [Theta; sqrt(nu) I]; only the right-hand side
    // changes across iterations.
    Eigen::MatrixXd stacked(n + p, p);
    stacked.topRows(n) = theta_mat.values;
    stacked.bottomRows(p) = std::sqrt(cfg.nu) * Eigen::MatrixXd::Identity(p, p);
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(stacked);

    const double l0_threshold = std::sqrt(2.0 * cfg.kappa / cfg.nu);
    const double l1_threshold = cfg.kappa / cfg.nu;
    const double l2_factor = 2.0 * cfg.kappa / cfg.nu;

    auto apply_prox = [&](double x) {
        switch (cfg.norm) {
            case Sr3Norm::L0: return prox_l0(x, l0_threshold);
            case Sr3Norm::L1: return prox_l1(x, l1_threshold);
            case Sr3Norm::L2: return prox_l2(x, l2_factor);
        }
        return x;
    };
    auto penalty = [&](const Eigen::MatrixXd& w) {
        double r = 0.0;
        for (Eigen::Index j = 0; j < p; ++j) {
            if (constant && j == *constant) continue;  // intercept unpenalized
            for (Eigen::Index t = 0; t < targets; ++t) {
                const double v = w(j, t);
                switch (cfg.norm) {
                    case Sr3Norm::L0: r += v != 0.0 ? 1.0 : 0.0; break;
                    case Sr3Norm::L1: r += std::abs(v); break;
                    case Sr3Norm::L2: r += v * v; break;
                }
            }
        }
        return r;
    };

    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(p, targets);
    Eigen::MatrixXd xi = Eigen::MatrixXd::Zero(p, targets);
    Eigen::MatrixXd rhs(n + p, targets);

    CoefficientMatrix out;
    out.feature_names = theta_mat.names;
    out.converged = false;
    int iterations = 0;
    while (iterations < cfg.max_iter) {
        ++iterations;
        rhs.topRows(n) = xdot;
        rhs.bottomRows(p) = std::sqrt(cfg.nu) * w;
        xi = qr.solve(rhs);

        Eigen::MatrixXd w_next(p, targets);
        for (Eigen::Index j = 0; j < p; ++j) {
            const bool is_const = constant && j == *constant;
            for (Eigen::Index t = 0; t < targets; ++t)
                w_next(j, t) = is_const ? xi(j, t) : apply_prox(xi(j, t));
        }

        const double objective = 0.5 * (theta_mat.values * xi - xdot).squaredNorm() +
                                 cfg.kappa * penalty(w_next) +
                                 0.5 * cfg.nu * (xi - w_next).squaredNorm();
        out.sr3_objective.push_back(objective);

        const double step = (w_next - w).norm();
        w = std::move(w_next);
        if (step < cfg.tol) {
            out.converged = true;
            break;
        }
    }

    out.values = w;
    out.sr3_xi = xi;
    out.iterations = iterations;
    return out;
}

CoefficientMatrix fit(const FeatureMatrix& theta_mat, const Eigen::MatrixXd& xdot,
                      const OptimizerConfig& cfg) {
    if (const auto* c = std::get_if<StlsqConfig>(&cfg)) return stlsq(theta_mat, xdot, *c);
    if (const auto* c = std::get_if<LassoConfig>(&cfg)) return lasso(theta_mat, xdot, *c);
    return sr3(theta_mat, xdot, std::get<Sr3Config>(cfg));
}

}  // namespace powersindy
