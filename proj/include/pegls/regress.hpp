#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pegls/distributions.hpp"
#include "pegls/error.hpp"

namespace pegls {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Summary statistics of a least-squares fit (Eviews-compatible definitions).
struct StatBlock {
    Index n = 0;
    Index k = 0;
    double r_squared = 0.0;
    double adj_r_squared = 0.0;
    double se_regression = 0.0;
    double ssr = 0.0;
    std::optional<double> log_likelihood; ///< empty for a perfect fit
    std::optional<double> f_stat;         ///< empty without a constant or when k == 1
    std::optional<double> f_prob;
    std::optional<double> durbin_watson;  ///< empty for all-zero residuals
    double mean_dep = 0.0;
    double sd_dep = 0.0;
    std::optional<double> aic;
    std::optional<double> sic;
    std::optional<double> hq;
};

/// Least-squares estimates with classical inference.
struct RegressionFit {
    std::vector<std::string> names;
    VectorXd coefficients;
    VectorXd std_errors;
    VectorXd t_stats;
    VectorXd t_probs; ///< two-tailed, n − k degrees of freedom
    VectorXd residuals;
    MatrixXd covariance;
    StatBlock stats;

    bool perfect_fit() const { return stats.ssr == 0.0; }
};

struct InformationCriteria {
    double aic = 0.0;
    double sic = 0.0;
    double hq = 0.0;
};

/// ℓ = −(n/2)(1 + ln 2π + ln(ssr/n)). Throws PerfectFit when ssr == 0.
inline double gaussian_log_likelihood(double ssr, Index n) {
    if (n <= 0) throw DomainError("gaussian_log_likelihood: n must be positive");
    if (ssr < 0.0 || std::isnan(ssr)) throw DomainError("gaussian_log_likelihood: ssr must be >= 0");
    if (ssr == 0.0) throw PerfectFit("log likelihood undefined for a perfect fit (ssr = 0)");
    const double nd = static_cast<double>(n);
    return -0.5 * nd * (1.0 + std::log(2.0 * std::numbers::pi) + std::log(ssr / nd));
}

/// Per-observation Akaike, Schwarz and Hannan-Quinn criteria.
inline InformationCriteria information_criteria(double log_likelihood, Index n, Index k) {
    if (k < 1) throw DomainError("information_criteria: k must be >= 1");
    if (static_cast<double>(n) <= std::numbers::e)
        throw DegenerateSample("information_criteria: ln ln n undefined for n = " + std::to_string(n));
    if (n <= k) throw InsufficientObservations("information_criteria: n must exceed k");
    const double nd = static_cast<double>(n);
    const double kd = static_cast<double>(k);
    const double m2ll = -2.0 * log_likelihood;
    return {(m2ll + 2.0 * kd) / nd, (m2ll + kd * std::log(nd)) / nd,
            (m2ll + 2.0 * kd * std::log(std::log(nd))) / nd};
}

/// Σ_{t≥2}(e_t − e_{t−1})² / Σ e_t² over the given order.
inline double durbin_watson(const VectorXd& residuals) {
    if (residuals.size() < 2) throw InsufficientObservations("durbin_watson: need at least 2 residuals");
    const double denom = residuals.squaredNorm();
    if (denom == 0.0) throw DegenerateResiduals("durbin_watson: all residuals are zero");
    const Index n = residuals.size();
    const double num = (residuals.tail(n - 1) - residuals.head(n - 1)).squaredNorm();
    return num / denom;
}

/// sqrt(ssr / (n − k)).
inline double regression_standard_error(double ssr, Index n, Index k) {
    if (n <= k) throw InsufficientObservations("regression_standard_error: n must exceed k");
    return std::sqrt(ssr / static_cast<double>(n - k));
}

/// Overall F = (R²/(k−1)) / ((1−R²)/(n−k)) and its upper-tail probability.
struct FTest {
    double statistic = 0.0;
    double prob = 1.0;
};

inline FTest f_test_from_r2(double r2, Index n, Index k) {
    if (k < 2) throw DomainError("f_test_from_r2: needs at least one regressor besides the constant");
    if (n <= k) throw InsufficientObservations("f_test_from_r2: n must exceed k");
    const double num = r2 / static_cast<double>(k - 1);
    const double den = (1.0 - r2) / static_cast<double>(n - k);
    FTest f;
    f.statistic = den > 0.0 ? num / den : std::numeric_limits<double>::infinity();
    f.prob = f_upper_tail(std::max(f.statistic, 0.0), static_cast<double>(k - 1), static_cast<double>(n - k));
    return f;
}

struct FitOptions {
    std::vector<std::string> names;
    /// Column whose span defines the restricted model for TSS. When empty and
    /// `detect_constant` is set, a column of identical nonzero entries is used.
    std::optional<Index> constant_column;
    bool detect_constant = true;
    /// Relative pivot threshold of the rank-revealing QR.
    double rank_tolerance = 1e-10;
};

namespace detail {

inline std::optional<Index> find_constant_column(const MatrixXd& X) {
    for (Index c = 0; c < X.cols(); ++c) {
        const double v = X(0, c);
        if (v != 0.0 && (X.col(c).array() == v).all()) return c;
    }
    return std::nullopt;
}

inline std::string column_name(const FitOptions& opts, Index c) {
    if (static_cast<std::size_t>(c) < opts.names.size()) return opts.names[static_cast<std::size_t>(c)];
    return "column " + std::to_string(c);
}

inline double safe_two_tailed(double t, double dof) {
    if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
    return t_two_tailed_prob(t, dof);
}

} // namespace detail

/**
 * @brief Ordinary least squares via column-pivoted Householder QR.
 *
 * Covariance is s²(XᵀX)⁻¹ with s² = ssr/(n − k), formed from the triangular
 * factor; XᵀX is never inverted directly. R² is measured against the
 * restricted model spanned by the constant column (centered TSS for a plain
 * constant), uncentered when there is none.
 */
inline RegressionFit ols_fit(const VectorXd& y, const MatrixXd& X, const FitOptions& opts = {}) {
    const Index n = X.rows();
    const Index k = X.cols();
    if (y.size() != n) throw DomainError("ols_fit: y and X row counts differ");
    if (k == 0) throw DomainError("ols_fit: empty design");
    if (n <= k)
        throw InsufficientObservations("ols_fit: n = " + std::to_string(n) + " must exceed k = " +
                                       std::to_string(k));

    Eigen::ColPivHouseholderQR<MatrixXd> qr(X);
    qr.setThreshold(opts.rank_tolerance);
    if (qr.rank() < k) {
        const Index dependent = qr.colsPermutation().indices()(qr.rank());
        throw Collinear("design is rank deficient (rank " + std::to_string(qr.rank()) + " < " +
                        std::to_string(k) + "); '" + detail::column_name(opts, dependent) +
                        "' is a linear combination of other columns");
    }

    RegressionFit fit;
    fit.names = opts.names;
    if (fit.names.size() != static_cast<std::size_t>(k)) {
        fit.names.clear();
        for (Index c = 0; c < k; ++c) fit.names.push_back(detail::column_name(opts, c));
    }
    fit.coefficients = qr.solve(y);
    fit.residuals = y - X * fit.coefficients;
    // Residuals at roundoff level are an exact fit.
    const double roundoff = 64.0 * std::numeric_limits<double>::epsilon();
    if (fit.residuals.squaredNorm() <= roundoff * roundoff * y.squaredNorm()) fit.residuals.setZero();

    const auto R = qr.matrixR().topLeftCorner(k, k).template triangularView<Eigen::Upper>();
    const MatrixXd Rinv = R.solve(MatrixXd::Identity(k, k));
    const MatrixXd unscaled_perm = Rinv * Rinv.transpose();
    const auto& P = qr.colsPermutation();
    MatrixXd unscaled = P * unscaled_perm * P.transpose();
    unscaled = 0.5 * (unscaled + unscaled.transpose());

    StatBlock& s = fit.stats;
    s.n = n;
    s.k = k;
    s.ssr = fit.residuals.squaredNorm();
    const double dof = static_cast<double>(n - k);
    const double s2 = s.ssr / dof;
    s.se_regression = regression_standard_error(s.ssr, n, k);
    fit.covariance = s2 * unscaled;
    fit.std_errors = fit.covariance.diagonal().cwiseSqrt();
    fit.t_stats = fit.coefficients.cwiseQuotient(fit.std_errors);
    fit.t_probs.resize(k);
    for (Index c = 0; c < k; ++c) fit.t_probs(c) = detail::safe_two_tailed(fit.t_stats(c), dof);

    s.mean_dep = y.mean();
    s.sd_dep = std::sqrt((y.array() - s.mean_dep).square().sum() / static_cast<double>(n - 1));

    std::optional<Index> constant = opts.constant_column;
    if (!constant && opts.detect_constant) constant = detail::find_constant_column(X);
    double tss = 0.0;
    if (constant) {
        const VectorXd c = X.col(*constant);
        tss = (y - c * (c.dot(y) / c.squaredNorm())).squaredNorm();
    } else {
        tss = y.squaredNorm();
    }
    s.r_squared = tss > 0.0 ? 1.0 - s.ssr / tss : (s.ssr == 0.0 ? 1.0 : 0.0);
    s.adj_r_squared = 1.0 - (1.0 - s.r_squared) * static_cast<double>(n - 1) / dof;
    if (constant && k >= 2) {
        const auto f = f_test_from_r2(s.r_squared, n, k);
        s.f_stat = f.statistic;
        s.f_prob = f.prob;
    }
    if (s.ssr > 0.0) {
        s.durbin_watson = durbin_watson(fit.residuals);
        s.log_likelihood = gaussian_log_likelihood(s.ssr, n);
        if (static_cast<double>(n) > std::numbers::e) {
            const auto ic = information_criteria(*s.log_likelihood, n, k);
            s.aic = ic.aic;
            s.sic = ic.sic;
            s.hq = ic.hq;
        }
    }
    return fit;
}

/// Pooled Pearson correlation of two equally sized samples.
inline double pearson(const VectorXd& a, const VectorXd& b) {
    if (a.size() != b.size() || a.size() < 2) throw DomainError("pearson: need two samples of equal size >= 2");
    const VectorXd da = a.array() - a.mean();
    const VectorXd db = b.array() - b.mean();
    const double sa = da.squaredNorm();
    const double sb = db.squaredNorm();
    if (sa == 0.0 || sb == 0.0) throw DegenerateVariable("pearson: constant sample");
    return da.dot(db) / std::sqrt(sa * sb);
}

} // namespace pegls
