#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pegls/distributions.hpp"
#include "pegls/error.hpp"
#include "pegls/panel.hpp"
#include "pegls/regress.hpp"

namespace pegls {

/// Cross-period residual covariance used to whiten each unit's block.
struct PeriodCovariance {
    enum class Source { estimated, supplied };
    MatrixXd sigma;
    Source source = Source::estimated;
};

inline const char* to_string(PeriodCovariance::Source s) {
    return s == PeriodCovariance::Source::estimated ? "estimated" : "supplied";
}

/// Divisor of the period covariance: N (default) or N − 1.
enum class CovarianceDivisor { units, units_minus_one };

/// Scaling of the PCSE sandwich: n/(n − k) (default) or none.
enum class PcseScaling { df_corrected, none };

namespace detail {

inline Eigen::LLT<MatrixXd> checked_cholesky(const MatrixXd& sigma, const char* what) {
    Eigen::LLT<MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success || !(llt.matrixL().toDenseMatrix().diagonal().array() > 0.0).all())
        throw SingularPeriodCovariance(std::string(what) + ": period covariance is not positive definite");
    return llt;
}

} // namespace detail

/// Wraps a user-supplied T×T matrix after checking symmetry and definiteness.
inline PeriodCovariance supplied_period_covariance(const MatrixXd& sigma) {
    if (sigma.rows() != sigma.cols() || sigma.rows() == 0)
        throw SingularPeriodCovariance("supplied period covariance must be square and non-empty");
    const double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());
    if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw SingularPeriodCovariance("supplied period covariance is not symmetric");
    detail::checked_cholesky(sigma, "supplied_period_covariance");
    return {sigma, PeriodCovariance::Source::supplied};
}

/**
 * @brief σ_ts = (1/N)·Σ_i e_it·e_is from an N×T residual matrix.
 *
 * Needs N > T; a rank-deficient or indefinite result throws
 * SingularPeriodCovariance.
 */
inline PeriodCovariance estimate_period_covariance(const MatrixXd& residuals,
                                                   CovarianceDivisor divisor = CovarianceDivisor::units) {
    const Index N = residuals.rows();
    const Index T = residuals.cols();
    if (N <= T)
        throw SingularPeriodCovariance("period covariance needs more units than periods (N = " +
                                       std::to_string(N) + ", T = " + std::to_string(T) + ")");
    const double d = static_cast<double>(divisor == CovarianceDivisor::units ? N : N - 1);
    MatrixXd sigma = (residuals.transpose() * residuals) / d;
    sigma = 0.5 * (sigma + sigma.transpose()).eval();
    detail::checked_cholesky(sigma, "estimate_period_covariance");
    return {sigma, PeriodCovariance::Source::estimated};
}

/// Dependent and design after whitening; rows keep the unit-major order.
struct TransformedDesign {
    VectorXd y;
    MatrixXd X;
};

/// Premultiplies every unit's T-row block of (y, X) by L⁻¹, where Σ = L·Lᵀ.
inline TransformedDesign period_sur_transform(const VectorXd& y, const MatrixXd& X, Index units, Index periods,
                                              const PeriodCovariance& cov) {
    if (y.size() != units * periods || X.rows() != y.size())
        throw DomainError("period_sur_transform: design does not have N·T rows");
    if (cov.sigma.rows() != periods || cov.sigma.cols() != periods)
        throw SingularPeriodCovariance("period covariance is " + std::to_string(cov.sigma.rows()) + "×" +
                                       std::to_string(cov.sigma.cols()) + ", panel has T = " +
                                       std::to_string(periods));
    const auto llt = detail::checked_cholesky(cov.sigma, "period_sur_transform");
    const MatrixXd L = llt.matrixL();
    TransformedDesign out{VectorXd(y.size()), MatrixXd(X.rows(), X.cols())};
    for (Index i = 0; i < units; ++i) {
        const Index r = i * periods;
        out.y.segment(r, periods) = L.triangularView<Eigen::Lower>().solve(y.segment(r, periods));
        out.X.middleRows(r, periods) = L.triangularView<Eigen::Lower>().solve(X.middleRows(r, periods));
    }
    return out;
}

/**
 * @brief Period SUR panel-corrected covariance.
 *
 * (X̃ᵀX̃)⁻¹ (Σ_i X̃_iᵀ Ω̂ X̃_i) (X̃ᵀX̃)⁻¹, with Ω̂ = ẼᵀẼ/N the cross-period
 * covariance of the stage-2 residuals, times n/(n − k) when df-corrected.
 */
inline MatrixXd pcse_covariance(const MatrixXd& Xt, const VectorXd& residuals, Index units, Index periods,
                                PcseScaling scaling = PcseScaling::df_corrected) {
    const Index n = Xt.rows();
    const Index k = Xt.cols();
    if (n != units * periods || residuals.size() != n)
        throw DomainError("pcse_covariance: inputs do not have N·T rows");
    if (n <= k) throw InsufficientObservations("pcse_covariance: n must exceed k");
    const MatrixXd E = unstack(residuals, units, periods);
    const MatrixXd omega = (E.transpose() * E) / static_cast<double>(units);
    MatrixXd meat = MatrixXd::Zero(k, k);
    for (Index i = 0; i < units; ++i) {
        const auto Xi = Xt.middleRows(i * periods, periods);
        meat.noalias() += Xi.transpose() * omega * Xi;
    }
    const Eigen::LDLT<MatrixXd> xtx(Xt.transpose() * Xt);
    const MatrixXd bread = xtx.solve(MatrixXd::Identity(k, k));
    MatrixXd cov = bread * meat * bread;
    if (scaling == PcseScaling::df_corrected)
        cov *= static_cast<double>(n) / static_cast<double>(n - k);
    return 0.5 * (cov + cov.transpose());
}

/// DW summed within units only, so differences never straddle two units.
inline double panel_durbin_watson(const VectorXd& residuals, Index units, Index periods) {
    const double denom = residuals.squaredNorm();
    if (denom == 0.0) throw DegenerateResiduals("durbin_watson: all residuals are zero");
    double num = 0.0;
    for (Index i = 0; i < units; ++i) {
        const auto e = residuals.segment(i * periods, periods);
        num += (e.tail(periods - 1) - e.head(periods - 1)).squaredNorm();
    }
    return num / denom;
}

struct EglsOptions {
    CovarianceDivisor divisor = CovarianceDivisor::units;
    PcseScaling pcse = PcseScaling::df_corrected;
};

/// Stage-2 estimates with PCSE inference plus both statistics blocks.
struct EglsFit {
    RegressionFit base;      ///< coefficients with PCSE std errors, t, probs
    StatBlock weighted_stats; ///< on the whitened data
    StatBlock unweighted_stats; ///< raw data at the EGLS coefficients
    VectorXd weighted_residuals;
    VectorXd unweighted_residuals;
    PeriodCovariance period_cov;
    StackedDesign design;
    TransformedDesign transformed;
};

/**
 * @brief One-step Period SUR EGLS.
 *
 * Pooled OLS residuals give Σ (unless supplied); each unit block is whitened
 * by L⁻¹ and pooled OLS on the whitened data gives the coefficients. Weighted
 * R² is measured against the whitened constant, so it is the fit gained over
 * a constant-only model estimated the same way.
 */
inline EglsFit egls_fit(const PanelDataset& ds, const ModelSpec& spec,
                        const std::optional<PeriodCovariance>& cov_override = std::nullopt,
                        const EglsOptions& options = {}) {
    EglsFit out;
    out.design = stack_design(ds, spec);
    const auto& d = out.design;
    FitOptions fo;
    fo.names = d.column_names;
    fo.constant_column = d.constant_column;
    fo.detect_constant = false;

    if (cov_override) {
        out.period_cov = *cov_override;
    } else {
        const auto stage1 = ols_fit(d.y, d.X, fo);
        out.period_cov = estimate_period_covariance(unstack(stage1.residuals, d.units, d.periods), options.divisor);
    }
    out.transformed = period_sur_transform(d.y, d.X, d.units, d.periods, out.period_cov);
    const auto& tr = out.transformed;

    out.base = ols_fit(tr.y, tr.X, fo);
    out.weighted_residuals = out.base.residuals;
    out.weighted_stats = out.base.stats;

    const Index n = d.X.rows();
    const Index k = d.X.cols();
    out.base.covariance = pcse_covariance(tr.X, out.weighted_residuals, d.units, d.periods, options.pcse);
    out.base.std_errors = out.base.covariance.diagonal().cwiseMax(0.0).cwiseSqrt();
    out.base.t_stats = out.base.coefficients.cwiseQuotient(out.base.std_errors);
    out.base.t_probs.resize(k);
    for (Index c = 0; c < k; ++c)
        out.base.t_probs(c) = detail::safe_two_tailed(out.base.t_stats(c), static_cast<double>(n - k));

    out.unweighted_residuals = d.y - d.X * out.base.coefficients;
    StatBlock& u = out.unweighted_stats;
    u.n = n;
    u.k = k;
    u.ssr = out.unweighted_residuals.squaredNorm();
    u.mean_dep = d.y.mean();
    u.sd_dep = std::sqrt((d.y.array() - u.mean_dep).square().sum() / static_cast<double>(n - 1));
    const double tss = d.constant_column ? (d.y.array() - u.mean_dep).square().sum() : d.y.squaredNorm();
    u.r_squared = tss > 0.0 ? 1.0 - u.ssr / tss : 0.0;
    u.adj_r_squared = 1.0 - (1.0 - u.r_squared) * static_cast<double>(n - 1) / static_cast<double>(n - k);
    u.se_regression = std::sqrt(u.ssr / static_cast<double>(n - k));
    if (u.ssr > 0.0) u.durbin_watson = panel_durbin_watson(out.unweighted_residuals, d.units, d.periods);
    return out;
}

} // namespace pegls
