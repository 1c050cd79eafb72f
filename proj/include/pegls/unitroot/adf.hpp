#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pegls/error.hpp"
#include "pegls/regress.hpp"
#include "pegls/unitroot/mackinnon.hpp"

namespace pegls {

/// ADF test regression with its tau (t-statistic on y_{t-1}).
struct AdfRegression {
    double tau = 0.0;
    Index lags = 0;
    RegressionFit fit;
};

namespace detail {

/**
 * Builds Δy_t on [y_{t-1}, Δy_{t-1..t-p}, 1, t] for rows t = first_row .. T-1
 * (0-based series index). `first_row` must be at least p + 1.
 */
inline void adf_design(std::span<const double> y, Index lags, DeterministicSpec spec, Index first_row,
                       VectorXd& dy, MatrixXd& X) {
    const Index T = static_cast<Index>(y.size());
    const Index rows = T - first_row;
    const Index k = 1 + lags + deterministic_terms(spec);
    dy.resize(rows);
    X.resize(rows, k);
    for (Index r = 0; r < rows; ++r) {
        const Index t = first_row + r;
        dy(r) = y[t] - y[t - 1];
        X(r, 0) = y[t - 1];
        for (Index j = 1; j <= lags; ++j) X(r, j) = y[t - j] - y[t - j - 1];
        Index c = 1 + lags;
        if (spec != DeterministicSpec::none) X(r, c++) = 1.0;
        if (spec == DeterministicSpec::trend_and_constant) X(r, c++) = static_cast<double>(t);
    }
}

inline std::vector<std::string> adf_names(Index lags, DeterministicSpec spec) {
    std::vector<std::string> names{"y(-1)"};
    for (Index j = 1; j <= lags; ++j) names.push_back("dy(-" + std::to_string(j) + ")");
    if (spec != DeterministicSpec::none) names.push_back("C");
    if (spec == DeterministicSpec::trend_and_constant) names.push_back("trend");
    return names;
}

inline AdfRegression adf_regression_from(std::span<const double> y, Index lags, DeterministicSpec spec,
                                         Index first_row) {
    const Index T = static_cast<Index>(y.size());
    const Index k = 1 + lags + deterministic_terms(spec);
    if (lags < 0) throw DomainError("adf_regression: negative lag order");
    if (first_row < lags + 1 || T - first_row <= k)
        throw InsufficientObservations("adf_regression: " + std::to_string(T - first_row) +
                                       " usable observations for " + std::to_string(k) + " regressors");
    VectorXd dy;
    MatrixXd X;
    adf_design(y, lags, spec, first_row, dy, X);

    // A series that the deterministic part and its own lags explain exactly has
    // no defined tau; report that before any rank complaint about the design.
    const double scale = std::max(dy.norm(), y.size() ? std::abs(y[0]) : 0.0);
    const VectorXd ls = X.colPivHouseholderQr().solve(dy);
    if ((dy - X * ls).norm() <= 1e-12 * std::max(scale, 1.0))
        throw PerfectFit("adf_regression: series is fit exactly (ssr = 0)");

    FitOptions opts;
    opts.names = adf_names(lags, spec);
    opts.detect_constant = spec != DeterministicSpec::none;
    if (spec != DeterministicSpec::none) opts.constant_column = 1 + lags;
    AdfRegression out;
    out.fit = ols_fit(dy, X, opts);
    out.tau = out.fit.t_stats(0);
    out.lags = lags;
    return out;
}

} // namespace detail

/**
 * @brief Augmented Dickey-Fuller regression on the largest sample the lag order allows.
 *
 * Regresses Δy_t on y_{t−1}, Δy_{t−1..t−p} and the deterministic terms; tau is
 * the t-statistic on y_{t−1}.
 */
inline AdfRegression adf_regression(std::span<const double> series, Index lags, DeterministicSpec spec) {
    return detail::adf_regression_from(series, lags, spec, lags + 1);
}

inline AdfRegression adf_regression(const VectorXd& series, Index lags, DeterministicSpec spec) {
    return adf_regression(std::span<const double>(series.data(), static_cast<std::size_t>(series.size())),
                          lags, spec);
}

/// Index of the smallest value; ties resolve to the earliest index.
inline Index argmin_first(std::span<const double> values) {
    if (values.empty()) throw DomainError("argmin_first: empty input");
    Index best = 0;
    for (Index i = 1; i < static_cast<Index>(values.size()); ++i)
        if (values[static_cast<std::size_t>(i)] < values[static_cast<std::size_t>(best)]) best = i;
    return best;
}

/// Largest lag order whose ADF regression, aligned at that order, keeps n − k ≥ 1.
inline Index feasible_max_lag(Index T, DeterministicSpec spec) {
    // rows = T - 1 - m, k = 1 + m + d  =>  rows - k >= 1  <=>  m <= (T - 3 - d) / 2
    const Index d = deterministic_terms(spec);
    const Index m = (T - 3 - d) / 2;
    if (T - 3 - d < 0) return -1;
    return m;
}

/**
 * @brief Default maximum lag: floor(12·(T/100)^{1/4}), kept below T/3 and
 * within what the regression can identify.
 */
inline Index default_max_lag(Index T, DeterministicSpec spec) {
    const Index schwert = static_cast<Index>(std::floor(12.0 * std::pow(static_cast<double>(T) / 100.0, 0.25)));
    const Index guard = static_cast<Index>(std::ceil(static_cast<double>(T) / 3.0)) - 1;
    const Index cap = std::min({schwert, guard, feasible_max_lag(T, spec)});
    if (cap < 0)
        throw InsufficientObservations("series of length " + std::to_string(T) +
                                       " is too short for any ADF regression");
    return cap;
}

/// Caps a requested maximum lag to the guard and feasibility limits for length T.
inline Index effective_max_lag(std::optional<Index> requested, Index T, DeterministicSpec spec) {
    const Index cap = default_max_lag(T, spec);
    if (!requested) return cap;
    const Index guard = std::min(static_cast<Index>(std::ceil(static_cast<double>(T) / 3.0)) - 1,
                                 feasible_max_lag(T, spec));
    return std::max<Index>(0, std::min(*requested, guard));
}

/**
 * @brief Lag order in 0..max_lag minimizing the Schwarz criterion of the ADF regression.
 *
 * Every candidate is estimated on the same rows (aligned to max_lag) so the
 * criteria are comparable; ties go to the smaller lag.
 */
inline Index select_lag_sic(std::span<const double> series, Index max_lag, DeterministicSpec spec) {
    const Index T = static_cast<Index>(series.size());
    if (max_lag < 0) throw DomainError("select_lag_sic: negative max_lag");
    if (3 * max_lag >= T)
        throw DomainError("select_lag_sic: max_lag " + std::to_string(max_lag) + " must be < T/3 (T = " +
                          std::to_string(T) + ")");
    std::vector<double> sic;
    sic.reserve(static_cast<std::size_t>(max_lag + 1));
    for (Index p = 0; p <= max_lag; ++p) {
        const auto reg = detail::adf_regression_from(series, p, spec, max_lag + 1);
        if (!reg.fit.stats.sic) throw DegenerateSample("select_lag_sic: Schwarz criterion undefined");
        sic.push_back(*reg.fit.stats.sic);
    }
    return argmin_first(sic);
}

inline Index select_lag_sic(const VectorXd& series, Index max_lag, DeterministicSpec spec) {
    return select_lag_sic(std::span<const double>(series.data(), static_cast<std::size_t>(series.size())),
                          max_lag, spec);
}

/// ADF test with SIC-selected lag and MacKinnon p-value.
struct AdfTest {
    double tau = 0.0;
    double p_value = 1.0;
    Index lags = 0;
};

inline AdfTest adf_test(std::span<const double> series, DeterministicSpec spec,
                        std::optional<Index> max_lag = std::nullopt) {
    const Index T = static_cast<Index>(series.size());
    const Index lag = select_lag_sic(series, effective_max_lag(max_lag, T, spec), spec);
    const auto reg = adf_regression(series, lag, spec);
    return {reg.tau, mackinnon_p(reg.tau, spec), lag};
}

// ---------------------------------------------------------------------------
// Phillips-Perron

/// Newey-West automatic bandwidth floor(4·(T/100)^{2/9}).
inline Index newey_west_bandwidth(Index T) {
    return static_cast<Index>(std::floor(4.0 * std::pow(static_cast<double>(T) / 100.0, 2.0 / 9.0)));
}

/// Bartlett-kernel long-run variance of a mean-zero sequence: γ0 + 2Σ(1 − j/(l+1))γ_j, γ_j = Σ u_t u_{t−j} / n.
inline double bartlett_long_run_variance(const VectorXd& u, Index bandwidth) {
    const Index n = u.size();
    const double nd = static_cast<double>(n);
    double lrv = u.squaredNorm() / nd;
    for (Index j = 1; j <= bandwidth && j < n; ++j) {
        const double gamma = u.tail(n - j).dot(u.head(n - j)) / nd;
        lrv += 2.0 * (1.0 - static_cast<double>(j) / static_cast<double>(bandwidth + 1)) * gamma;
    }
    return lrv;
}

struct PpTest {
    double z_tau = 0.0;
    double p_value = 1.0;
    Index bandwidth = 0;
};

inline constexpr Index kMinPpLength = 6;

/**
 * @brief Phillips-Perron Z-tau with a Bartlett/Newey-West correction.
 *
 * Z = √(γ0/λ²)·t − (λ² − γ0)·n·se(ρ̂) / (2λs), from the Dickey-Fuller regression
 * without augmentation lags.
 */
inline PpTest pp_test(std::span<const double> series, DeterministicSpec spec) {
    const Index T = static_cast<Index>(series.size());
    if (T < kMinPpLength)
        throw InsufficientObservations("pp_test: need at least " + std::to_string(kMinPpLength) +
                                       " observations, got " + std::to_string(T));
    const auto reg = adf_regression(series, 0, spec);
    const Index n = reg.fit.residuals.size();
    const Index l = newey_west_bandwidth(T);
    const double gamma0 = reg.fit.residuals.squaredNorm() / static_cast<double>(n);
    const double lambda2 = bartlett_long_run_variance(reg.fit.residuals, l);
    if (!(lambda2 > 0.0)) throw DegenerateResiduals("pp_test: non-positive long-run variance");
    const double lambda = std::sqrt(lambda2);
    const double se_rho = reg.fit.std_errors(0);
    const double s = reg.fit.stats.se_regression;
    const double z = std::sqrt(gamma0 / lambda2) * reg.tau -
                     (lambda2 - gamma0) * static_cast<double>(n) * se_rho / (2.0 * lambda * s);
    return {z, mackinnon_p(z, spec), l};
}

inline double pp_single(std::span<const double> series, DeterministicSpec spec) {
    return pp_test(series, spec).p_value;
}

} // namespace pegls
