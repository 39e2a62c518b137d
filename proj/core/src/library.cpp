#include "powersindy/library.hpp"

#include <array>
#include <cmath>
#include <functional>

#include "powersindy/errors.hpp"

namespace powersindy {

void LibrarySpec::validate() const {
    if (poly_degree < 1 || poly_degree > 3)
        throw ConfigError("library: poly_degree must be in {1,2,3}");
    if (fourier_order < 0 || fourier_order > 1)
        throw ConfigError("library: fourier_order must be 0 or 1");
    if (poly_degree == 3 && fourier_order == 1)
        throw ConfigError("library: p3f1 is not supported");
    if (!(time_scale > 0.0)) throw ConfigError("library: time_scale must be > 0");
}

std::string LibrarySpec::name() const {
    std::string n = "p" + std::to_string(poly_degree);
    if (fourier_order > 0) n += "f" + std::to_string(fourier_order);
    return n;
}

namespace {

// Monomial exponent tuples in graded lexicographic order, degrees 0..d.
std::vector<std::vector<int>> monomial_exponents(int n_states, int degree) {
    std::vector<std::vector<int>> out;
    std::vector<int> expo(static_cast<std::size_t>(n_states), 0);
    // Lexicographic enumeration within each total degree, first state major.
    std::function<void(int, int)> rec = [&](int pos, int remaining) {
        if (pos == n_states - 1) {
            expo[static_cast<std::size_t>(pos)] = remaining;
            out.push_back(expo);
            return;
        }
        for (int e = remaining; e >= 0; --e) {
            expo[static_cast<std::size_t>(pos)] = e;
            rec(pos + 1, remaining - e);
        }
    };
    for (int d = 0; d <= degree; ++d) rec(0, d);
    return out;
}

std::string monomial_name(const std::vector<int>& expo,
                          const std::vector<std::string>& states) {
    std::string name;
    for (std::size_t s = 0; s < expo.size(); ++s) {
        if (expo[s] == 0) continue;
        if (!name.empty()) name += "*";
        name += states[s];
        if (expo[s] > 1) name += "^" + std::to_string(expo[s]);
    }
    return name.empty() ? "1" : name;
}

std::vector<std::string> state_names(const LibrarySpec& spec) {
    if (spec.include_time) return {"theta", "omega", "T"};
    return {"theta", "omega"};
}

}  // namespace

int feature_count(const LibrarySpec& spec, int n_states) {
    spec.validate();
    if (n_states != spec.n_states())
        throw ConfigError("library: n_states " + std::to_string(n_states) +
                          " does not match the spec's state count " +
                          std::to_string(spec.n_states()));
    return feature_count(spec);
}

int feature_count(const LibrarySpec& spec) {
    spec.validate();
    const int n = spec.n_states();
    const int d = spec.poly_degree;
    // C(n + d, d)
    int binom = 1;
    for (int i = 1; i <= d; ++i) binom = binom * (n + i) / i;
    return binom + 2 * spec.fourier_order * n;
}

std::vector<std::string> feature_names(const LibrarySpec& spec) {
    spec.validate();
    const auto states = state_names(spec);
    std::vector<std::string> names;
    for (const auto& expo : monomial_exponents(spec.n_states(), spec.poly_degree))
        names.push_back(monomial_name(expo, states));
    for (int order = 1; order <= spec.fourier_order; ++order) {
        for (const auto& s : states) {
            names.push_back("sin(" + s + ")");
            names.push_back("cos(" + s + ")");
        }
    }
    return names;
}

Eigen::VectorXd evaluate_features_at(const LibrarySpec& spec, double theta, double omega,
                                     double t) {
    const int n_states = spec.n_states();
    std::array<double, 3> x{theta, omega, t};
    Eigen::VectorXd row(feature_count(spec));
    Eigen::Index col = 0;
    for (const auto& expo : monomial_exponents(n_states, spec.poly_degree)) {
        double v = 1.0;
        for (int s = 0; s < n_states; ++s)
            for (int e = 0; e < expo[static_cast<std::size_t>(s)]; ++e)
                v *= x[static_cast<std::size_t>(s)];
        row[col++] = v;
    }
    if (spec.fourier_order >= 1) {
        for (int s = 0; s < n_states; ++s) {
            // Only the time argument carries the configurable scale.
            const double arg = (spec.include_time && s == 2)
                                   ? spec.time_scale * x[static_cast<std::size_t>(s)]
                                   : x[static_cast<std::size_t>(s)];
            row[col++] = std::sin(arg);
            row[col++] = std::cos(arg);
        }
    }
    return row;
}

FeatureMatrix build_feature_matrix(const StateTrajectory& traj, const LibrarySpec& spec) {
    spec.validate();
    if (!traj.theta.allFinite() || !traj.omega.allFinite() || !traj.time.allFinite())
        throw DataError("feature matrix: non-finite trajectory value");
    FeatureMatrix fm;
    fm.names = feature_names(spec);
    const Eigen::Index rows = traj.size();
    fm.values.resize(rows, static_cast<Eigen::Index>(fm.names.size()));
    for (Eigen::Index i = 0; i < rows; ++i)
        fm.values.row(i) = evaluate_features_at(spec, traj.theta[i], traj.omega[i],
                                                traj.time[i]);
    return fm;
}

std::optional<Eigen::Index> FeatureMatrix::constant_column() const {
    for (std::size_t j = 0; j < names.size(); ++j)
        if (names[j] == "1") return static_cast<Eigen::Index>(j);
    return std::nullopt;
}

}  // namespace powersindy
