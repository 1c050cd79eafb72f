#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pegls/distributions.hpp"
#include "pegls/error.hpp"
#include "pegls/unitroot/adf.hpp"
#include "pegls/unitroot/moment_tables.hpp"

namespace pegls {

/// One test of the battery. Null: unit root.
struct UnitRootResult {
    std::string test_name;
    DeterministicSpec spec = DeterministicSpec::constant_only;
    std::optional<double> statistic;
    std::optional<double> p_value;
    std::optional<int> dof; ///< Fisher tests only
    bool rejects_unit_root_at_5pct = false;
    std::optional<std::string> error; ///< set when the test could not run

    static UnitRootResult from(std::string name, DeterministicSpec spec, double statistic, double p) {
        UnitRootResult r;
        r.test_name = std::move(name);
        r.spec = spec;
        r.statistic = statistic;
        r.p_value = std::clamp(p, 0.0, 1.0);
        r.rejects_unit_root_at_5pct = *r.p_value < 0.05;
        return r;
    }
};

enum class StationarityDecision { stationary, non_stationary };

inline const char* to_string(StationarityDecision d) {
    return d == StationarityDecision::stationary ? "stationary" : "non_stationary";
}

/// The twelve results and their majority vote.
struct UnitRootReport {
    std::vector<UnitRootResult> results;
    int votes_stationary = 0;
    int vote_threshold = 7;
    StationarityDecision decision = StationarityDecision::non_stationary;
};

struct UnitRootOptions {
    std::optional<Index> max_lag; ///< per-unit cap; default floor(12·(T/100)^{1/4})
    int vote_threshold = 7;
};

inline constexpr const char* kLlcName = "Levin, Lin & Chu t*";
inline constexpr const char* kBreitungName = "Breitung t-stat";
inline constexpr const char* kIpsName = "Im, Pesaran and Shin W-stat";
inline constexpr const char* kAdfFisherName = "ADF - Fisher Chi-square";
inline constexpr const char* kPpFisherName = "PP - Fisher Chi-square";

namespace detail {

inline std::vector<double> row_of(const MatrixXd& panel, Index i) {
    std::vector<double> out(static_cast<std::size_t>(panel.cols()));
    for (Index t = 0; t < panel.cols(); ++t) out[static_cast<std::size_t>(t)] = panel(i, t);
    return out;
}

inline void require_panel(const MatrixXd& panel, const char* test, Index min_length) {
    if (panel.rows() < 2) throw InsufficientObservations(std::string(test) + ": need at least 2 cross-sections");
    if (panel.cols() < min_length)
        throw InsufficientObservations(std::string(test) + ": need at least " + std::to_string(min_length) +
                                       " periods, got " + std::to_string(panel.cols()));
}

// Residual of v after projecting on the columns of Z (v itself when Z is empty).
inline VectorXd partial_out(const VectorXd& v, const MatrixXd& Z) {
    if (Z.cols() == 0) return v;
    Eigen::ColPivHouseholderQR<MatrixXd> qr(Z);
    return v - Z * qr.solve(v);
}

inline MatrixXd deterministic_columns(Index rows, Index first_t, DeterministicSpec spec) {
    MatrixXd D(rows, deterministic_terms(spec));
    for (Index r = 0; r < rows; ++r) {
        Index c = 0;
        if (spec != DeterministicSpec::none) D(r, c++) = 1.0;
        if (spec == DeterministicSpec::trend_and_constant) D(r, c++) = static_cast<double>(first_t + r);
    }
    return D;
}

// Pooled no-intercept regression of y on x: slope, its standard error and t.
struct PooledSlope {
    double slope = 0.0;
    double se = 0.0;
    double t = 0.0;
    double sigma2 = 0.0;
    Index n = 0;
};

inline PooledSlope pooled_slope(const std::vector<double>& y, const std::vector<double>& x, double sigma_divisor_offset) {
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        sxy += x[i] * y[i];
        sxx += x[i] * x[i];
    }
    if (!(sxx > 0.0)) throw DegenerateResiduals("pooled regression: regressor is identically zero");
    PooledSlope out;
    out.n = static_cast<Index>(y.size());
    out.slope = sxy / sxx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double e = y[i] - out.slope * x[i];
        ssr += e * e;
    }
    out.sigma2 = ssr / (static_cast<double>(out.n) - sigma_divisor_offset);
    out.se = std::sqrt(out.sigma2 / sxx);
    out.t = out.slope / out.se;
    return out;
}

} // namespace detail

/**
 * @brief Levin-Lin-Chu adjusted pooled t* (common unit root).
 *
 * Per unit: SIC lag, Δy and y_{t−1} purged of lagged differences and
 * deterministic terms, both scaled by the ADF regression standard error; the
 * ratio of the Bartlett long-run to short-run standard deviation enters the
 * mean correction. p-value is the lower normal tail.
 */
inline UnitRootResult llc_test(const MatrixXd& panel, DeterministicSpec spec,
                               std::optional<Index> max_lag = std::nullopt) {
    detail::require_panel(panel, "llc_test", 4);
    const Index N = panel.rows();
    const Index T = panel.cols();
    std::vector<double> e_all, v_all;
    double ratio_sum = 0.0;
    const Index bandwidth = newey_west_bandwidth(T);
    const Index lag_cap = effective_max_lag(max_lag, T, spec);

    for (Index i = 0; i < N; ++i) {
        const auto y = detail::row_of(panel, i);
        const std::span<const double> ys(y);
        const Index p = select_lag_sic(ys, lag_cap, spec);
        const auto reg = adf_regression(ys, p, spec);
        const double sigma = reg.fit.stats.se_regression;

        VectorXd dy;
        MatrixXd X;
        detail::adf_design(ys, p, spec, p + 1, dy, X);
        const MatrixXd Z = X.rightCols(X.cols() - 1);
        const VectorXd e = detail::partial_out(dy, Z) / sigma;
        const VectorXd v = detail::partial_out(X.col(0), Z) / sigma;
        e_all.insert(e_all.end(), e.data(), e.data() + e.size());
        v_all.insert(v_all.end(), v.data(), v.data() + v.size());

        VectorXd diffs(T - 1);
        for (Index t = 1; t < T; ++t) diffs(t - 1) = y[static_cast<std::size_t>(t)] - y[static_cast<std::size_t>(t - 1)];
        const VectorXd u = detail::partial_out(diffs, detail::deterministic_columns(T - 1, 1, spec));
        const double lrv = bartlett_long_run_variance(u, bandwidth);
        ratio_sum += std::sqrt(std::max(lrv, 0.0)) / sigma;
    }

    const auto pooled = detail::pooled_slope(e_all, v_all, 0.0);
    const double total = static_cast<double>(e_all.size());
    const double t_tilde = total / static_cast<double>(N);
    const double s_n = ratio_sum / static_cast<double>(N);
    const auto adj = llc_adjustment(t_tilde, spec);
    const double t_star =
        (pooled.t - total * s_n * pooled.se / pooled.sigma2 * adj.mean) / adj.sd;
    return UnitRootResult::from(kLlcName, spec, t_star, normal_cdf(t_star));
}

/**
 * @brief Breitung λ for the trend-and-constant model.
 *
 * Only the autoregressive part is removed when prewhitening; the forward
 * orthogonalized differences are then regressed on levels detrended by their
 * endpoints. p-value is the lower normal tail.
 */
inline UnitRootResult breitung_test(const MatrixXd& panel, std::optional<Index> max_lag = std::nullopt) {
    constexpr auto spec = DeterministicSpec::trend_and_constant;
    detail::require_panel(panel, "breitung_test", 6);
    const Index N = panel.rows();
    const Index T = panel.cols();
    const Index lag_cap = effective_max_lag(max_lag, T, spec);
    std::vector<double> dep, reg_level;

    for (Index i = 0; i < N; ++i) {
        const auto y = detail::row_of(panel, i);
        const std::span<const double> ys(y);
        const Index p = select_lag_sic(ys, lag_cap, spec);
        const double s = adf_regression(ys, p, spec).fit.stats.se_regression;

        auto dy_at = [&](Index t) { return y[static_cast<std::size_t>(t)] - y[static_cast<std::size_t>(t - 1)]; };
        VectorXd beta = VectorXd::Zero(p);
        if (p > 0) {
            const Index rows = T - 1 - p;
            VectorXd d(rows);
            MatrixXd L(rows, p);
            for (Index r = 0; r < rows; ++r) {
                const Index t = p + 1 + r;
                d(r) = dy_at(t);
                for (Index j = 1; j <= p; ++j) L(r, j - 1) = dy_at(t - j);
            }
            beta = L.colPivHouseholderQr().solve(d);
        }
        // Prewhitened level at τ = p..T−1 and difference at t = p+1..T−1.
        auto level = [&](Index tau) {
            double v = y[static_cast<std::size_t>(tau)];
            for (Index j = 1; j <= p; ++j) v -= beta(j - 1) * dy_at(tau + 1 - j);
            return v / s;
        };
        auto diff = [&](Index t) {
            double v = dy_at(t);
            for (Index j = 1; j <= p; ++j) v -= beta(j - 1) * dy_at(t - j);
            return v / s;
        };
        const Index m = T - 1 - p;
        std::vector<double> dw(static_cast<std::size_t>(m)), lv(static_cast<std::size_t>(m + 1));
        for (Index r = 0; r < m; ++r) dw[static_cast<std::size_t>(r)] = diff(p + 1 + r);
        for (Index r = 0; r <= m; ++r) lv[static_cast<std::size_t>(r)] = level(p + r);

        double tail_sum = 0.0;
        for (Index r = 1; r < m; ++r) tail_sum += dw[static_cast<std::size_t>(r)];
        for (Index r = 0; r + 1 < m; ++r) {
            const double remaining = static_cast<double>(m - r - 1);
            const double fwd = std::sqrt(remaining / (remaining + 1.0)) *
                               (dw[static_cast<std::size_t>(r)] - tail_sum / remaining);
            tail_sum -= dw[static_cast<std::size_t>(r + 1)];
            const double detrended = lv[static_cast<std::size_t>(r)] - lv[0] -
                                     static_cast<double>(r) / static_cast<double>(m) *
                                         (lv[static_cast<std::size_t>(m)] - lv[0]);
            dep.push_back(fwd);
            reg_level.push_back(detrended);
        }
    }
    const auto pooled = detail::pooled_slope(dep, reg_level, 1.0);
    return UnitRootResult::from(kBreitungName, spec, pooled.t, normal_cdf(pooled.t));
}

/**
 * @brief Im-Pesaran-Shin W-t-bar (individual unit roots).
 *
 * Per-unit ADF taus with SIC lags, standardized by the simulated null moments
 * for each unit's length and lag. Lag search stops at the longest tabulated lag.
 */
inline UnitRootResult ips_test(const MatrixXd& panel, DeterministicSpec spec,
                               std::optional<Index> max_lag = std::nullopt) {
    if (spec == DeterministicSpec::none)
        throw DomainError("ips_test: requires a constant or trend-and-constant specification");
    detail::require_panel(panel, "ips_test", 4);
    const Index N = panel.rows();
    const Index T = panel.cols();
    const int tab_lag = ips_max_tabulated_lag(spec, static_cast<int>(T));
    if (tab_lag < 0)
        throw UnsupportedSampleSize("ips_test: no tabulated moments for T = " + std::to_string(T));
    const Index lag_cap = std::min<Index>(effective_max_lag(max_lag, T, spec), tab_lag);
    double tau_sum = 0.0, mean_sum = 0.0, var_sum = 0.0;
    for (Index i = 0; i < N; ++i) {
        const auto y = detail::row_of(panel, i);
        const std::span<const double> ys(y);
        const Index p = select_lag_sic(ys, lag_cap, spec);
        tau_sum += adf_regression(ys, p, spec).tau;
        const auto mom = ips_moments(spec, static_cast<int>(T), static_cast<int>(p));
        mean_sum += mom.mean;
        var_sum += mom.variance;
    }
    const double nd = static_cast<double>(N);
    const double w = std::sqrt(nd) * (tau_sum / nd - mean_sum / nd) / std::sqrt(var_sum / nd);
    return UnitRootResult::from(kIpsName, spec, w, normal_cdf(w));
}

/// Fisher combination −2Σ ln p_i ~ χ²(2N).
struct FisherCombination {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
};

inline FisherCombination fisher_combine(std::span<const double> p_values) {
    if (p_values.empty()) throw DomainError("fisher_combine: no p-values");
    std::vector<double> sorted(p_values.begin(), p_values.end());
    for (double p : sorted)
        if (!(p > 0.0 && p <= 1.0))
            throw DomainError("fisher_combine: p-values must lie in (0, 1], got " + std::to_string(p));
    // Summing in a canonical order keeps the result independent of input order.
    std::sort(sorted.begin(), sorted.end());
    double stat = 0.0;
    for (double p : sorted) stat -= 2.0 * std::log(p);
    FisherCombination out;
    out.statistic = stat;
    out.dof = static_cast<int>(2 * sorted.size());
    out.p_value = chi_sq_upper_tail(stat, out.dof);
    return out;
}

inline UnitRootResult fisher_result(const char* name, DeterministicSpec spec, const std::vector<double>& p) {
    const auto f = fisher_combine(p);
    auto r = UnitRootResult::from(name, spec, f.statistic, f.p_value);
    r.dof = f.dof;
    return r;
}

/// ADF-Fisher: per-unit ADF (SIC lag) MacKinnon p-values, Fisher-combined.
inline UnitRootResult adf_fisher_test(const MatrixXd& panel, DeterministicSpec spec,
                                      std::optional<Index> max_lag = std::nullopt) {
    detail::require_panel(panel, "adf_fisher_test", 4);
    std::vector<double> p;
    for (Index i = 0; i < panel.rows(); ++i) {
        const auto y = detail::row_of(panel, i);
        p.push_back(adf_test(std::span<const double>(y), spec, max_lag).p_value);
    }
    return fisher_result(kAdfFisherName, spec, p);
}

/// PP-Fisher: per-unit Phillips-Perron p-values, Fisher-combined.
inline UnitRootResult pp_fisher_test(const MatrixXd& panel, DeterministicSpec spec) {
    detail::require_panel(panel, "pp_fisher_test", kMinPpLength);
    std::vector<double> p;
    for (Index i = 0; i < panel.rows(); ++i) {
        const auto y = detail::row_of(panel, i);
        p.push_back(pp_single(std::span<const double>(y), spec));
    }
    return fisher_result(kPpFisherName, spec, p);
}

/// Counts rejections and applies the vote threshold.
inline UnitRootReport tally_votes(std::vector<UnitRootResult> results, int threshold = 7) {
    UnitRootReport report;
    report.results = std::move(results);
    report.vote_threshold = threshold;
    for (const auto& r : report.results) report.votes_stationary += r.rejects_unit_root_at_5pct ? 1 : 0;
    report.decision = report.votes_stationary >= threshold ? StationarityDecision::stationary
                                                           : StationarityDecision::non_stationary;
    return report;
}

/**
 * @brief Runs the twelve-test battery and the majority vote.
 *
 * Order: LLC (trend+C, C, none), Breitung (trend+C), IPS (trend+C, C),
 * ADF-Fisher and PP-Fisher (trend+C, C, none). A test that fails is kept with
 * its error and counts as a non-rejection.
 */
inline UnitRootReport battery(const MatrixXd& panel, const UnitRootOptions& options = {}) {
    using DS = DeterministicSpec;
    constexpr DS all[] = {DS::trend_and_constant, DS::constant_only, DS::none};
    std::vector<UnitRootResult> results;
    auto run = [&](const char* name, DS spec, const std::function<UnitRootResult()>& f) {
        try {
            results.push_back(f());
        } catch (const Error& e) {
            UnitRootResult r;
            r.test_name = name;
            r.spec = spec;
            r.error = e.name() + ": " + e.what();
            results.push_back(std::move(r));
        }
    };
    for (DS s : all) run(kLlcName, s, [&] { return llc_test(panel, s, options.max_lag); });
    run(kBreitungName, DS::trend_and_constant, [&] { return breitung_test(panel, options.max_lag); });
    for (DS s : {DS::trend_and_constant, DS::constant_only})
        run(kIpsName, s, [&] { return ips_test(panel, s, options.max_lag); });
    for (DS s : all) run(kAdfFisherName, s, [&] { return adf_fisher_test(panel, s, options.max_lag); });
    for (DS s : all) run(kPpFisherName, s, [&] { return pp_fisher_test(panel, s); });
    return tally_votes(std::move(results), options.vote_threshold);
}

} // namespace pegls
