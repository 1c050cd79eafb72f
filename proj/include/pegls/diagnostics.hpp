#pragma once

#include <algorithm>
#include <cmath>
#include <iterator>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pegls/distributions.hpp"
#include "pegls/egls.hpp"
#include "pegls/error.hpp"
#include "pegls/panel.hpp"
#include "pegls/regress.hpp"

namespace pegls {

// ---------------------------------------------------------------- normality

struct JarqueBera {
    double statistic = 0.0;
    double prob = 1.0;
    double skewness = 0.0;
    double kurtosis = 0.0;
    Index n = 0;
};

/// n·(S²/6 + (K − 3)²/24) with population (divisor-n) moments; χ²(2) tail.
inline JarqueBera jarque_bera(const VectorXd& residuals) {
    const Index n = residuals.size();
    if (n < 4) throw InsufficientObservations("jarque_bera: need at least 4 residuals");
    const double nd = static_cast<double>(n);
    const Eigen::ArrayXd c = residuals.array() - residuals.mean();
    const double m2 = c.square().sum() / nd;
    if (!(m2 > 0.0)) throw DegenerateResiduals("jarque_bera: residuals have zero variance");
    const double m3 = c.cube().sum() / nd;
    const double m4 = c.square().square().sum() / nd;
    JarqueBera out;
    out.n = n;
    out.skewness = m3 / std::pow(m2, 1.5);
    out.kurtosis = m4 / (m2 * m2);
    const double ek = out.kurtosis - 3.0;
    out.statistic = nd * (out.skewness * out.skewness / 6.0 + ek * ek / 24.0);
    out.prob = chi_sq_upper_tail(out.statistic, 2);
    return out;
}

// ---------------------------------------------------------------- Durbin-Watson

enum class DwDecision { no_autocorrelation, positive, negative, inconclusive };

inline const char* to_string(DwDecision d) {
    switch (d) {
    case DwDecision::no_autocorrelation: return "no_autocorrelation";
    case DwDecision::positive: return "positive";
    case DwDecision::negative: return "negative";
    case DwDecision::inconclusive: return "inconclusive";
    }
    return "?";
}

struct DwBounds {
    double dl = 0.0;
    double du = 0.0;
    Index n = 0;
    Index k_prime = 0;
    double alpha = 0.05;

    void validate() const {
        if (!(dl > 0.0 && dl < du && du < 2.0))
            throw ConfigError("Durbin-Watson bounds need 0 < dl < du < 2 (got dl = " + std::to_string(dl) +
                              ", du = " + std::to_string(du) + ")");
    }
};

inline DwDecision dw_decide(double stat, const DwBounds& b) {
    b.validate();
    if (stat < b.dl) return DwDecision::positive;
    if (stat < b.du) return DwDecision::inconclusive;
    if (stat <= 4.0 - b.du) return DwDecision::no_autocorrelation;
    if (stat <= 4.0 - b.dl) return DwDecision::inconclusive;
    return DwDecision::negative;
}

namespace detail {

struct DwRow {
    int n;
    double bounds[5][2]; // k′ = 1..5: dl, du
};

// Savin-White 5% bounds, model with intercept.
inline constexpr DwRow kDwTable[] = {
    {50, {{1.503, 1.585}, {1.462, 1.628}, {1.421, 1.674}, {1.378, 1.721}, {1.335, 1.771}}},
    {55, {{1.528, 1.601}, {1.490, 1.641}, {1.452, 1.681}, {1.414, 1.724}, {1.374, 1.768}}},
    {60, {{1.549, 1.616}, {1.514, 1.652}, {1.480, 1.689}, {1.444, 1.727}, {1.408, 1.767}}},
    {65, {{1.567, 1.629}, {1.536, 1.662}, {1.503, 1.696}, {1.471, 1.731}, {1.438, 1.767}}},
    {70, {{1.583, 1.641}, {1.554, 1.672}, {1.525, 1.703}, {1.494, 1.735}, {1.464, 1.768}}},
    {75, {{1.598, 1.652}, {1.571, 1.680}, {1.543, 1.709}, {1.515, 1.739}, {1.487, 1.770}}},
    {80, {{1.611, 1.662}, {1.586, 1.688}, {1.560, 1.715}, {1.534, 1.743}, {1.507, 1.772}}},
    {85, {{1.624, 1.671}, {1.600, 1.696}, {1.575, 1.721}, {1.550, 1.747}, {1.525, 1.774}}},
    {90, {{1.635, 1.679}, {1.612, 1.703}, {1.589, 1.726}, {1.566, 1.751}, {1.542, 1.776}}},
    {95, {{1.645, 1.687}, {1.623, 1.709}, {1.602, 1.732}, {1.579, 1.755}, {1.557, 1.778}}},
    {100, {{1.654, 1.694}, {1.634, 1.715}, {1.613, 1.736}, {1.592, 1.758}, {1.571, 1.780}}},
    {150, {{1.720, 1.746}, {1.706, 1.760}, {1.693, 1.774}, {1.679, 1.788}, {1.665, 1.802}}},
    {200, {{1.758, 1.778}, {1.748, 1.789}, {1.738, 1.799}, {1.728, 1.810}, {1.718, 1.820}}},
};

} // namespace detail

/// 5% bounds from the built-in table at the nearest tabulated n (ties go to the smaller n).
inline DwBounds dw_bounds_lookup(Index n, Index k_prime) {
    if (k_prime < 1 || k_prime > 5)
        throw ConfigError("Durbin-Watson table covers 1..5 regressors excluding the constant, got " +
                          std::to_string(k_prime));
    const auto* best = &detail::kDwTable[0];
    for (const auto& row : detail::kDwTable)
        if (std::abs(row.n - n) < std::abs(best->n - n)) best = &row;
    const auto& b = best->bounds[k_prime - 1];
    return {b[0], b[1], n, k_prime, 0.05};
}

// ---------------------------------------------------------------- heteroskedasticity

struct BpgResult {
    double lm_stat = 0.0;
    int dof = 0;
    double prob = 1.0;
    bool homoskedastic = true;
    RegressionFit aux_fit;
};

/**
 * @brief Breusch-Pagan-Godfrey: regress e² on the design (constant included).
 *
 * LM = n·R² of the auxiliary fit with k − 1 degrees of freedom.
 */
inline BpgResult bpg_test(const VectorXd& residuals, const MatrixXd& X, std::optional<Index> constant_column,
                          const std::vector<std::string>& names = {}) {
    if (!constant_column) throw InvalidModel("bpg_test: the design must include a constant");
    if (X.cols() < 2) throw InvalidModel("bpg_test: the design needs at least one regressor besides the constant");
    const VectorXd e2 = residuals.array().square();
    FitOptions fo;
    fo.names = names;
    fo.constant_column = constant_column;
    fo.detect_constant = false;
    BpgResult out;
    out.aux_fit = ols_fit(e2, X, fo);
    // Constant e² leaves nothing to explain.
    if ((e2.array() == e2(0)).all()) out.aux_fit.stats.r_squared = 0.0;
    const Index n = X.rows();
    out.dof = static_cast<int>(X.cols() - 1);
    out.lm_stat = static_cast<double>(n) * std::max(out.aux_fit.stats.r_squared, 0.0);
    out.prob = chi_sq_upper_tail(out.lm_stat, out.dof);
    out.homoskedastic = out.prob > 0.05;
    return out;
}

// ---------------------------------------------------------------- cross-section dependence

struct CsdResult {
    double bp_lm = 0.0;
    int bp_dof = 0;
    double bp_prob = 1.0;
    double scaled_lm = 0.0;
    double scaled_lm_prob = 1.0;
    double cd = 0.0;
    double cd_prob = 1.0;
    bool demeaned = true;
};

namespace detail {

// Neumaier compensated accumulator.
struct CompensatedSum {
    double sum = 0.0;
    double c = 0.0;
    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            c += (sum - t) + x;
        else
            c += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + c; }
};

} // namespace detail

/**
 * @brief Breusch-Pagan LM, Pesaran scaled LM and Pesaran CD on an N×T residual matrix.
 *
 * Pairwise correlations are taken over time for every i < j, after removing
 * each unit's own mean when `demean` is set.
 */
inline CsdResult csd_tests(const MatrixXd& residuals, bool demean = true,
                           const std::vector<std::string>& unit_names = {}) {
    const Index N = residuals.rows();
    const Index T = residuals.cols();
    if (N < 2) throw InsufficientObservations("csd_tests: need at least 2 cross-sections");
    if (T < 3) throw InsufficientObservations("csd_tests: need at least 3 periods");
    MatrixXd u = residuals;
    if (demean)
        for (Index i = 0; i < N; ++i) u.row(i).array() -= u.row(i).mean();
    VectorXd norms(N);
    for (Index i = 0; i < N; ++i) {
        norms(i) = u.row(i).norm();
        if (!(norms(i) > 0.0)) {
            const std::string who = static_cast<std::size_t>(i) < unit_names.size()
                                        ? unit_names[static_cast<std::size_t>(i)]
                                        : "unit " + std::to_string(i);
            throw DegenerateResiduals("csd_tests: " + who + " has zero residual variance");
        }
    }
    const double Td = static_cast<double>(T);
    detail::CompensatedSum sum_r, sum_r2, sum_scaled;
    for (Index i = 0; i < N; ++i)
        for (Index j = i + 1; j < N; ++j) {
            const double r = u.row(i).dot(u.row(j)) / (norms(i) * norms(j));
            sum_r.add(r);
            sum_r2.add(Td * r * r);
            sum_scaled.add(Td * r * r - 1.0);
        }
    const double Nd = static_cast<double>(N);
    CsdResult out;
    out.demeaned = demean;
    out.bp_lm = sum_r2.value();
    out.bp_dof = static_cast<int>(N * (N - 1) / 2);
    out.bp_prob = chi_sq_upper_tail(out.bp_lm, out.bp_dof);
    out.scaled_lm = std::sqrt(1.0 / (Nd * (Nd - 1.0))) * sum_scaled.value();
    out.scaled_lm_prob = normal_two_sided_prob(out.scaled_lm);
    out.cd = std::sqrt(2.0 * Td / (Nd * (Nd - 1.0))) * sum_r.value();
    out.cd_prob = normal_two_sided_prob(out.cd);
    return out;
}

// ---------------------------------------------------------------- correlation and collinearity

struct CorrelationMatrix {
    std::vector<std::string> names;
    MatrixXd values;
};

/// Pooled Pearson correlations over all N·T observations.
inline CorrelationMatrix pearson_matrix(const PanelDataset& ds, const std::vector<std::string>& vars) {
    if (vars.size() < 2) throw ConfigError("pearson_matrix: need at least 2 variables");
    const auto m = static_cast<Index>(vars.size());
    std::vector<VectorXd> cols;
    for (const auto& v : vars) cols.push_back(stack(ds.variable(v)));
    CorrelationMatrix out{vars, MatrixXd::Identity(m, m)};
    for (Index a = 0; a < m; ++a)
        for (Index b = a + 1; b < m; ++b) {
            double r = 0.0;
            try {
                r = pearson(cols[static_cast<std::size_t>(a)], cols[static_cast<std::size_t>(b)]);
            } catch (const DegenerateVariable&) {
                const auto& which = (cols[static_cast<std::size_t>(a)].array() ==
                                     cols[static_cast<std::size_t>(a)](0)).all()
                                        ? vars[static_cast<std::size_t>(a)]
                                        : vars[static_cast<std::size_t>(b)];
                throw DegenerateVariable("pearson_matrix: variable '" + which + "' is constant");
            }
            out.values(a, b) = out.values(b, a) = r;
        }
    return out;
}

/// ρ² < R² (default) or |ρ| < R² for the largest off-diagonal correlation.
enum class KleinRule { squared_corr_below_r2, abs_corr_below_r2 };

inline const char* to_string(KleinRule r) {
    return r == KleinRule::squared_corr_below_r2 ? "squared_corr_below_r2" : "abs_corr_below_r2";
}

struct KleinResult {
    bool respected = true;
    Index row = 0;
    Index col = 1;
    double max_abs_corr = 0.0;
    double compared_value = 0.0;
    double model_r2 = 0.0;
    KleinRule rule = KleinRule::squared_corr_below_r2;
};

inline KleinResult klein_check(const MatrixXd& corr, double model_r2,
                               KleinRule rule = KleinRule::squared_corr_below_r2) {
    if (corr.rows() != corr.cols() || corr.rows() < 2)
        throw DomainError("klein_check: need a square correlation matrix of order >= 2");
    if (!(model_r2 >= 0.0 && model_r2 <= 1.0)) throw DomainError("klein_check: R² must lie in [0, 1]");
    KleinResult out;
    out.rule = rule;
    out.model_r2 = model_r2;
    out.max_abs_corr = -1.0;
    for (Index i = 0; i < corr.rows(); ++i)
        for (Index j = i + 1; j < corr.cols(); ++j)
            if (std::abs(corr(i, j)) > out.max_abs_corr) {
                out.max_abs_corr = std::abs(corr(i, j));
                out.row = i;
                out.col = j;
            }
    out.compared_value =
        rule == KleinRule::squared_corr_below_r2 ? out.max_abs_corr * out.max_abs_corr : out.max_abs_corr;
    out.respected = out.compared_value < model_r2;
    return out;
}

// ---------------------------------------------------------------- full suite

enum class ResidualSpace { weighted, unweighted };

inline const char* to_string(ResidualSpace s) { return s == ResidualSpace::weighted ? "weighted" : "unweighted"; }

struct DiagnosticsOptions {
    std::optional<DwBounds> dw_bounds;     ///< explicit bounds; table lookup when empty
    ResidualSpace bpg_space = ResidualSpace::weighted;
    ResidualSpace csd_space = ResidualSpace::weighted;
    bool csd_demean = true;
    KleinRule klein_rule = KleinRule::squared_corr_below_r2;
};

struct DiagnosticsReport {
    JarqueBera jarque_bera;
    double dw_stat = 0.0;
    DwBounds dw_bounds;
    DwDecision dw_decision = DwDecision::inconclusive;
    ResidualSpace bpg_space = ResidualSpace::weighted;
    BpgResult bpg;
    ResidualSpace csd_space = ResidualSpace::weighted;
    CsdResult csd;
    CorrelationMatrix correlations; ///< dependent first, then the regressors
    KleinResult klein;
};

/// JB, DW, BPG, cross-section dependence and Klein's rule for a finished EGLS fit.
inline DiagnosticsReport run_diagnostics(const EglsFit& fit, const PanelDataset& ds, const ModelSpec& spec,
                                         const DiagnosticsOptions& options = {}) {
    const auto& d = fit.design;
    DiagnosticsReport r;
    r.jarque_bera = jarque_bera(fit.weighted_residuals);

    r.dw_stat = fit.weighted_stats.durbin_watson.value_or(durbin_watson(fit.weighted_residuals));
    const Index k_prime = d.X.cols() - (d.constant_column ? 1 : 0);
    r.dw_bounds = options.dw_bounds ? *options.dw_bounds : dw_bounds_lookup(d.X.rows(), k_prime);
    r.dw_decision = dw_decide(r.dw_stat, r.dw_bounds);

    r.bpg_space = options.bpg_space;
    const VectorXd& bpg_e =
        options.bpg_space == ResidualSpace::weighted ? fit.weighted_residuals : fit.unweighted_residuals;
    r.bpg = bpg_test(bpg_e, d.X, d.constant_column, d.column_names);

    r.csd_space = options.csd_space;
    const VectorXd& csd_e =
        options.csd_space == ResidualSpace::weighted ? fit.weighted_residuals : fit.unweighted_residuals;
    r.csd = csd_tests(unstack(csd_e, d.units, d.periods), options.csd_demean, d.unit_ids);

    const PanelDataset window = spec.sample ? subset(ds, ds.variable_names(), *spec.sample) : ds;
    std::vector<std::string> vars{spec.dependent};
    vars.insert(vars.end(), spec.regressors.begin(), spec.regressors.end());
    r.correlations = pearson_matrix(window, vars);
    if (spec.regressors.size() >= 2) {
        const auto m = static_cast<Index>(spec.regressors.size());
        r.klein = klein_check(r.correlations.values.bottomRightCorner(m, m),
                              std::clamp(fit.weighted_stats.r_squared, 0.0, 1.0), options.klein_rule);
        // indices relative to the full matrix
        r.klein.row += 1;
        r.klein.col += 1;
    }
    return r;
}

} // namespace pegls
