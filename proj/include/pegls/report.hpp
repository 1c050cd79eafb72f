#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pegls/config.hpp"
#include "pegls/diagnostics.hpp"
#include "pegls/egls.hpp"
#include "pegls/panel.hpp"
#include "pegls/unitroot.hpp"

namespace pegls {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------- JSON builders

namespace detail {

inline Json num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

inline Json num(const std::optional<double>& v) { return v ? num(*v) : Json(nullptr); }

inline Json matrix_json(const MatrixXd& m) {
    Json rows = Json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Index c = 0; c < m.cols(); ++c) row.push_back(num(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json stat_block_json(const StatBlock& s) {
    Json j;
    j["r_squared"] = num(s.r_squared);
    j["adj_r_squared"] = num(s.adj_r_squared);
    j["se_regression"] = num(s.se_regression);
    j["ssr"] = num(s.ssr);
    j["log_likelihood"] = num(s.log_likelihood);
    j["f_statistic"] = num(s.f_stat);
    j["f_prob"] = num(s.f_prob);
    j["durbin_watson"] = num(s.durbin_watson);
    j["mean_dep"] = num(s.mean_dep);
    j["sd_dep"] = num(s.sd_dep);
    j["aic"] = num(s.aic);
    j["sic"] = num(s.sic);
    j["hq"] = num(s.hq);
    return j;
}

inline Json coefficients_json(const RegressionFit& f) {
    Json rows = Json::array();
    for (Index c = 0; c < f.coefficients.size(); ++c) {
        Json r;
        r["variable"] = f.names[static_cast<std::size_t>(c)];
        r["coefficient"] = num(f.coefficients(c));
        r["std_error"] = num(f.std_errors(c));
        r["t_statistic"] = num(f.t_stats(c));
        r["prob"] = num(f.t_probs(c));
        rows.push_back(std::move(r));
    }
    return rows;
}

inline Json panel_header_json(const StackedDesign& d) {
    Json j;
    j["sample"] = {d.period_ids.front(), d.period_ids.back()};
    j["periods"] = d.periods;
    j["cross_sections"] = d.units;
    j["observations"] = d.units * d.periods;
    return j;
}

} // namespace detail

inline Json ingest_json(const PanelDataset& ds, const std::string& source) {
    Json j;
    j["source"] = source;
    j["cross_sections"] = ds.units();
    j["periods"] = ds.periods();
    j["first_period"] = ds.period_ids().front();
    j["last_period"] = ds.period_ids().back();
    j["observations_per_variable"] = ds.observations();
    j["balanced"] = true;
    j["units"] = ds.unit_ids();
    j["variables"] = ds.variable_names();
    return j;
}

inline Json unit_root_json(const std::string& variable, const UnitRootReport& rep) {
    Json j;
    j["variable"] = variable;
    Json results = Json::array();
    for (const auto& r : rep.results) {
        Json t;
        t["test"] = r.test_name;
        t["deterministic"] = to_string(r.spec);
        t["statistic"] = detail::num(r.statistic);
        t["dof"] = r.dof ? Json(*r.dof) : Json(nullptr);
        t["prob"] = detail::num(r.p_value);
        t["rejects_unit_root"] = r.rejects_unit_root_at_5pct;
        t["error"] = r.error ? Json(*r.error) : Json(nullptr);
        results.push_back(std::move(t));
    }
    j["results"] = std::move(results);
    j["votes_stationary"] = rep.votes_stationary;
    j["tests"] = rep.results.size();
    j["vote_threshold"] = rep.vote_threshold;
    j["decision"] = to_string(rep.decision);
    return j;
}

inline Json estimation_json(const EglsFit& fit, const EglsOptions& options) {
    Json j;
    j["dependent"] = fit.design.dependent;
    j["method"] = "Panel EGLS (Period SUR)";
    j.update(detail::panel_header_json(fit.design));
    j["weighting"] = fit.period_cov.source == PeriodCovariance::Source::estimated ? "one_step_estimated" : "supplied";
    j["covariance_divisor"] = options.divisor == CovarianceDivisor::units ? "N" : "N-1";
    j["pcse_scaling"] = options.pcse == PcseScaling::df_corrected ? "df_corrected" : "none";
    j["coefficients"] = detail::coefficients_json(fit.base);
    j["weighted"] = detail::stat_block_json(fit.weighted_stats);
    Json u;
    u["r_squared"] = detail::num(fit.unweighted_stats.r_squared);
    u["ssr"] = detail::num(fit.unweighted_stats.ssr);
    u["durbin_watson"] = detail::num(fit.unweighted_stats.durbin_watson);
    u["mean_dep"] = detail::num(fit.unweighted_stats.mean_dep);
    j["unweighted"] = std::move(u);
    j["coefficient_covariance"] = detail::matrix_json(fit.base.covariance);
    j["period_covariance"] = detail::matrix_json(fit.period_cov.sigma);
    return j;
}

inline Json diagnostics_json(const DiagnosticsReport& r, const EglsFit& fit, const std::string& equation,
                             bool dw_bounds_supplied) {
    Json j;
    j["equation"] = equation;
    j.update(detail::panel_header_json(fit.design));

    Json jb;
    jb["residuals"] = "weighted";
    jb["observations"] = r.jarque_bera.n;
    jb["skewness"] = detail::num(r.jarque_bera.skewness);
    jb["kurtosis"] = detail::num(r.jarque_bera.kurtosis);
    jb["statistic"] = detail::num(r.jarque_bera.statistic);
    jb["prob"] = detail::num(r.jarque_bera.prob);
    jb["verdict"] = r.jarque_bera.prob > 0.05 ? "normal" : "non_normal";
    j["jarque_bera"] = std::move(jb);

    Json dw;
    dw["statistic"] = detail::num(r.dw_stat);
    dw["dl"] = detail::num(r.dw_bounds.dl);
    dw["du"] = detail::num(r.dw_bounds.du);
    dw["bounds_source"] = dw_bounds_supplied ? "supplied" : "table";
    dw["n"] = fit.design.X.rows();
    dw["k_prime"] = fit.design.X.cols() - (fit.design.constant_column ? 1 : 0);
    dw["decision"] = to_string(r.dw_decision);
    j["durbin_watson"] = std::move(dw);

    Json csd;
    csd["residuals"] = to_string(r.csd_space);
    csd["demeaned"] = r.csd.demeaned;
    csd["breusch_pagan_lm"] = {{"statistic", detail::num(r.csd.bp_lm)},
                               {"dof", r.csd.bp_dof},
                               {"prob", detail::num(r.csd.bp_prob)}};
    csd["pesaran_scaled_lm"] = {{"statistic", detail::num(r.csd.scaled_lm)},
                                {"prob", detail::num(r.csd.scaled_lm_prob)}};
    csd["pesaran_cd"] = {{"statistic", detail::num(r.csd.cd)}, {"prob", detail::num(r.csd.cd_prob)}};
    const bool independent = r.csd.bp_prob > 0.05 && r.csd.scaled_lm_prob > 0.05 && r.csd.cd_prob > 0.05;
    csd["verdict"] = independent ? "no_cross_section_dependence" : "cross_section_dependence";
    j["cross_section_dependence"] = std::move(csd);

    Json bpg;
    bpg["residuals"] = to_string(r.bpg_space);
    RegressionFit aux = r.bpg.aux_fit;
    bpg["coefficients"] = detail::coefficients_json(aux);
    bpg["statistics"] = detail::stat_block_json(aux.stats);
    bpg["observations"] = aux.stats.n;
    bpg["lm_statistic"] = detail::num(r.bpg.lm_stat);
    bpg["dof"] = r.bpg.dof;
    bpg["prob"] = detail::num(r.bpg.prob);
    bpg["verdict"] = r.bpg.homoskedastic ? "homoskedastic" : "heteroskedastic";
    j["breusch_pagan_godfrey"] = std::move(bpg);

    Json corr;
    corr["variables"] = r.correlations.names;
    corr["matrix"] = detail::matrix_json(r.correlations.values);
    j["correlations"] = std::move(corr);

    Json klein;
    if (r.correlations.names.size() >= 3) {
        klein["rule"] = to_string(r.klein.rule);
        klein["pair"] = {r.correlations.names[static_cast<std::size_t>(r.klein.row)],
                         r.correlations.names[static_cast<std::size_t>(r.klein.col)]};
        klein["max_abs_corr"] = detail::num(r.klein.max_abs_corr);
        klein["compared_value"] = detail::num(r.klein.compared_value);
        klein["model_r_squared"] = detail::num(r.klein.model_r2);
        klein["verdict"] = r.klein.respected ? "respected" : "violated";
    } else {
        klein["verdict"] = "not_applicable";
    }
    j["klein"] = std::move(klein);
    return j;
}

// ---------------------------------------------------------------- figure data and deltas

struct FigurePoint {
    std::string unit;
    int period = 0;
    double x = 0.0;
    double y = 0.0;
};

struct FigureData {
    std::string x_name;
    std::string y_name;
    std::vector<FigurePoint> points;
    double pearson = 0.0;
    double r_squared = 0.0; ///< simple regression of y on x with a constant
};

inline FigureData emit_figure_data(const PanelDataset& ds, const std::string& x, const std::string& y) {
    const MatrixXd& mx = ds.variable(x);
    const MatrixXd& my = ds.variable(y);
    FigureData out{x, y, {}, 0.0, 0.0};
    for (Index i = 0; i < ds.units(); ++i)
        for (Index t = 0; t < ds.periods(); ++t)
            out.points.push_back({ds.unit_ids()[static_cast<std::size_t>(i)],
                                  ds.period_ids()[static_cast<std::size_t>(t)], mx(i, t), my(i, t)});
    out.pearson = pearson(stack(mx), stack(my));
    out.r_squared = out.pearson * out.pearson;
    return out;
}

inline Json figure_json(const FigureData& f) {
    Json j;
    j["x"] = f.x_name;
    j["y"] = f.y_name;
    Json rows = Json::array();
    for (const auto& p : f.points)
        rows.push_back({{"unit", p.unit}, {"period", p.period}, {"x", detail::num(p.x)}, {"y", detail::num(p.y)}});
    j["points"] = std::move(rows);
    j["observations"] = f.points.size();
    j["pearson"] = detail::num(f.pearson);
    j["r_squared"] = detail::num(f.r_squared);
    return j;
}

struct DeltaRow {
    std::string unit;
    double from_value = 0.0;
    double to_value = 0.0;
    double delta = 0.0;
};

struct DeltaReport {
    std::string variable;
    int from = 0;
    int to = 0;
    std::vector<DeltaRow> rows; ///< descending by delta, ties by unit id
    std::optional<DeltaRow> aggregate;
};

inline DeltaReport delta_report(const PanelDataset& ds, const std::string& var, int from, int to,
                                const PanelDataset* aggregate = nullptr, const std::string& aggregate_unit = {}) {
    const MatrixXd& m = ds.variable(var);
    const auto a = ds.period_index(from);
    const auto b = ds.period_index(to);
    if (!a || !b)
        throw InvalidWindow("delta: period " + std::to_string(!a ? from : to) + " is outside the data (" +
                            std::to_string(ds.period_ids().front()) + "-" + std::to_string(ds.period_ids().back()) +
                            ")");
    DeltaReport out{var, from, to, {}, std::nullopt};
    for (Index i = 0; i < ds.units(); ++i)
        out.rows.push_back({ds.unit_ids()[static_cast<std::size_t>(i)], m(i, *a), m(i, *b), m(i, *b) - m(i, *a)});
    std::sort(out.rows.begin(), out.rows.end(), [](const DeltaRow& l, const DeltaRow& r) {
        return l.delta != r.delta ? l.delta > r.delta : l.unit < r.unit;
    });
    if (aggregate && aggregate->has_variable(var)) {
        const auto ai = aggregate_unit.empty() ? std::optional<Index>(0) : aggregate->unit_index(aggregate_unit);
        const auto pa = aggregate->period_index(from);
        const auto pb = aggregate->period_index(to);
        if (ai && pa && pb) {
            const MatrixXd& g = aggregate->variable(var);
            out.aggregate = DeltaRow{aggregate->unit_ids()[static_cast<std::size_t>(*ai)], g(*ai, *pa), g(*ai, *pb),
                                     g(*ai, *pb) - g(*ai, *pa)};
        }
    }
    return out;
}

inline Json delta_json(const DeltaReport& d) {
    auto row = [](const DeltaRow& r) {
        return Json{{"unit", r.unit},
                    {"from_value", detail::num(r.from_value)},
                    {"to_value", detail::num(r.to_value)},
                    {"delta_pp", detail::num(r.delta)}};
    };
    Json j;
    j["variable"] = d.variable;
    j["from"] = d.from;
    j["to"] = d.to;
    Json rows = Json::array();
    for (const auto& r : d.rows) rows.push_back(row(r));
    j["units"] = std::move(rows);
    j["aggregate"] = d.aggregate ? row(*d.aggregate) : Json(nullptr);
    return j;
}

// ---------------------------------------------------------------- pipeline

enum class Stage { ingest, unit_root, estimate, diagnose, report };

inline const char* to_string(Stage s) {
    switch (s) {
    case Stage::ingest: return "ingest";
    case Stage::unit_root: return "unit-root";
    case Stage::estimate: return "estimate";
    case Stage::diagnose: return "diagnose";
    case Stage::report: return "report";
    }
    return "?";
}

inline PanelDataset load_run_data(const RunConfig& cfg) { return load_panel_csv(cfg.data_path, cfg.schema); }

inline void validate_run(const RunConfig& cfg, const PanelDataset& ds) {
    cfg.model.validate(ds);
    for (const auto& v : cfg.battery_variables()) ds.variable(v);
}

/**
 * @brief Runs the requested stage and everything it depends on.
 *
 * The returned document holds only the sections the stage reports; `report`
 * holds all four.
 */
inline Json run_pipeline(const RunConfig& cfg, Stage stage) {
    const PanelDataset ds = load_run_data(cfg);
    validate_run(cfg, ds);
    const PanelDataset window =
        cfg.model.sample ? subset(ds, ds.variable_names(), *cfg.model.sample) : ds;

    Json out;
    out["command"] = to_string(stage);
    if (stage == Stage::ingest || stage == Stage::report)
        out["ingest"] = ingest_json(ds, cfg.data_path.lexically_normal().generic_string());
    if (stage == Stage::unit_root || stage == Stage::report) {
        Json ur = Json::array();
        for (const auto& v : cfg.battery_variables()) ur.push_back(unit_root_json(v, battery(window.variable(v), cfg.unit_root)));
        out["unit_root"] = std::move(ur);
    }
    if (stage == Stage::estimate || stage == Stage::diagnose || stage == Stage::report) {
        std::optional<PeriodCovariance> cov;
        if (cfg.period_covariance) cov = supplied_period_covariance(*cfg.period_covariance);
        const EglsFit fit = egls_fit(ds, cfg.model, cov, cfg.egls);
        if (stage != Stage::diagnose) out["estimation"] = estimation_json(fit, cfg.egls);
        if (stage != Stage::estimate) {
            const auto diag = run_diagnostics(fit, ds, cfg.model, cfg.diagnostics);
            out["diagnostics"] = diagnostics_json(diag, fit, cfg.equation_name, cfg.diagnostics.dw_bounds.has_value());
        }
    }
    return out;
}

// ---------------------------------------------------------------- text rendering

namespace detail {

inline std::string fixed(const Json& v, int decimals) {
    if (v.is_null()) return "NA";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v.get<double>());
    std::string s(buf);
    if (s == "-0" || s.find_first_not_of("-0.") == std::string::npos) {
        if (!s.empty() && s[0] == '-') s.erase(0, 1);
    }
    return s;
}

inline std::string stat(const Json& v) { return fixed(v, 6); }
inline std::string prob(const Json& v) { return fixed(v, 4); }

inline std::string upper(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

inline std::string integer(const Json& v) { return std::to_string(v.get<long long>()); }

// Left-aligned first column, right-aligned remaining columns.
class TextTable {
public:
    void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

    void render(std::ostream& os, std::vector<bool> left_aligned = {}) const {
        std::vector<std::size_t> width;
        for (const auto& r : rows_)
            for (std::size_t c = 0; c < r.size(); ++c) {
                if (width.size() <= c) width.push_back(0);
                width[c] = std::max(width[c], r[c].size());
            }
        for (const auto& r : rows_) {
            std::string line;
            for (std::size_t c = 0; c < r.size(); ++c) {
                const bool left = c < left_aligned.size() ? left_aligned[c] : c == 0;
                const std::string pad(width[c] - r[c].size(), ' ');
                if (c > 0) line += "  ";
                line += left ? r[c] + pad : pad + r[c];
            }
            while (!line.empty() && line.back() == ' ') line.pop_back();
            os << line << '\n';
        }
    }

private:
    std::vector<std::vector<std::string>> rows_;
};

inline void render_panel_header(std::ostream& os, const Json& j) {
    os << "Sample: " << integer(j["sample"][0]) << ' ' << integer(j["sample"][1]) << '\n';
    os << "Periods included: " << integer(j["periods"]) << '\n';
    os << "Cross-sections included: " << integer(j["cross_sections"]) << '\n';
    os << "Total panel (balanced) observations: " << integer(j["observations"]) << '\n';
}

inline void render_coefficients(std::ostream& os, const Json& rows) {
    TextTable t;
    t.row({"Variable", "Coefficient", "Std. Error", "t-Statistic", "Prob."});
    for (const auto& r : rows)
        t.row({upper(r["variable"].get<std::string>()), stat(r["coefficient"]), stat(r["std_error"]),
               stat(r["t_statistic"]), prob(r["prob"])});
    t.render(os);
}

inline void render_ingest(std::ostream& os, const Json& j) {
    os << "Panel data\n";
    os << "Source: " << j["source"].get<std::string>() << '\n';
    os << "Cross-sections: " << integer(j["cross_sections"]) << '\n';
    os << "Periods: " << integer(j["periods"]) << " (" << integer(j["first_period"]) << "-"
       << integer(j["last_period"]) << ")\n";
    os << "Observations per variable: " << integer(j["observations_per_variable"]) << " (balanced)\n";
    os << "Units:";
    for (const auto& u : j["units"]) os << ' ' << u.get<std::string>();
    os << "\nVariables:";
    for (const auto& v : j["variables"]) os << ' ' << v.get<std::string>();
    os << '\n';
}

inline std::string spec_label(const std::string& s) {
    if (s == "trend_and_constant") return "trend and constant";
    if (s == "constant_only") return "constant";
    return "none";
}

inline void render_unit_root(std::ostream& os, const Json& j) {
    os << "Panel unit root tests: " << upper(j["variable"].get<std::string>()) << '\n';
    os << "Null hypothesis: unit root\n";
    TextTable t;
    t.row({"Test", "Deterministic", "Statistic", "d.f.", "Prob.", "Rejects"});
    std::vector<std::string> errors;
    for (const auto& r : j["results"]) {
        t.row({r["test"].get<std::string>(), spec_label(r["deterministic"].get<std::string>()), stat(r["statistic"]),
               r["dof"].is_null() ? "" : integer(r["dof"]), prob(r["prob"]),
               r["rejects_unit_root"].get<bool>() ? "yes" : "no"});
        if (!r["error"].is_null())
            errors.push_back(r["test"].get<std::string>() + " (" + spec_label(r["deterministic"].get<std::string>()) +
                             "): " + r["error"].get<std::string>());
    }
    t.render(os, {true, true, false, false, false, false});
    for (const auto& e : errors) os << "Not computed: " << e << '\n';
    os << "Votes for stationarity: " << integer(j["votes_stationary"]) << " of " << integer(j["tests"])
       << " (threshold " << integer(j["vote_threshold"]) << ")\n";
    os << "Decision: " << j["decision"].get<std::string>() << '\n';
}

inline void render_estimation(std::ostream& os, const Json& j) {
    os << "Dependent Variable: " << upper(j["dependent"].get<std::string>()) << '\n';
    os << "Method: " << j["method"].get<std::string>() << '\n';
    render_panel_header(os, j);
    os << (j["weighting"] == "supplied" ? "Linear estimation with supplied period weighting matrix\n"
                                        : "Linear estimation after one-step weighting matrix\n");
    os << (j["pcse_scaling"] == "df_corrected"
               ? "Period SUR (PCSE) standard errors & covariance (d.f. corrected)\n"
               : "Period SUR (PCSE) standard errors & covariance (no d.f. correction)\n");
    os << '\n';
    render_coefficients(os, j["coefficients"]);
    const auto& w = j["weighted"];
    os << "\nWeighted Statistics\n\n";
    TextTable t;
    t.row({"R-squared", stat(w["r_squared"]), "Mean dependent var", stat(w["mean_dep"])});
    t.row({"Adjusted R-squared", stat(w["adj_r_squared"]), "S.D. dependent var", stat(w["sd_dep"])});
    t.row({"S.E. of regression", stat(w["se_regression"]), "Sum squared resid", stat(w["ssr"])});
    t.row({"F-statistic", stat(w["f_statistic"]), "Durbin-Watson stat", stat(w["durbin_watson"])});
    t.row({"Prob(F-statistic)", prob(w["f_prob"]), "", ""});
    t.render(os, {true, false, true, false});
    const auto& u = j["unweighted"];
    os << "\nUnweighted Statistics\n\n";
    TextTable tu;
    tu.row({"R-squared", stat(u["r_squared"]), "Mean dependent var", stat(u["mean_dep"])});
    tu.row({"Sum squared resid", stat(u["ssr"]), "Durbin-Watson stat", stat(u["durbin_watson"])});
    tu.render(os, {true, false, true, false});
}

inline void render_diagnostics(std::ostream& os, const Json& j) {
    const auto& jb = j["jarque_bera"];
    os << "Normality test (" << jb["residuals"].get<std::string>() << " residuals)\n";
    TextTable tj;
    tj.row({"Observations", integer(jb["observations"])});
    tj.row({"Skewness", stat(jb["skewness"])});
    tj.row({"Kurtosis", stat(jb["kurtosis"])});
    tj.row({"Jarque-Bera", stat(jb["statistic"])});
    tj.row({"Probability", prob(jb["prob"])});
    tj.render(os);
    os << "Verdict: " << jb["verdict"].get<std::string>() << "\n\n";

    const auto& dw = j["durbin_watson"];
    os << "Durbin-Watson test\n";
    TextTable td;
    td.row({"Durbin-Watson stat", stat(dw["statistic"])});
    td.row({"DL", stat(dw["dl"])});
    td.row({"DU", stat(dw["du"])});
    td.render(os);
    os << "Bounds: " << dw["bounds_source"].get<std::string>() << ", 5% level, n = " << integer(dw["n"])
       << ", k' = " << integer(dw["k_prime"]) << '\n';
    os << "Decision: " << dw["decision"].get<std::string>() << "\n\n";

    const auto& c = j["cross_section_dependence"];
    os << "Residual Cross-Section Dependence Test\n";
    os << "Null hypothesis: No cross-section dependence (correlation) in " << c["residuals"].get<std::string>()
       << " residuals\n";
    os << "Equation: " << upper(j["equation"].get<std::string>()) << '\n';
    os << "Periods included: " << integer(j["periods"]) << '\n';
    os << "Cross-sections included: " << integer(j["cross_sections"]) << '\n';
    os << "Total panel observations: " << integer(j["observations"]) << '\n';
    if (c["demeaned"].get<bool>()) os << "Cross-section means were removed during computation of correlations\n";
    TextTable tc;
    tc.row({"Test", "Statistic", "d.f.", "Prob."});
    tc.row({"Breusch-Pagan LM", stat(c["breusch_pagan_lm"]["statistic"]), integer(c["breusch_pagan_lm"]["dof"]),
            prob(c["breusch_pagan_lm"]["prob"])});
    tc.row({"Pesaran scaled LM", stat(c["pesaran_scaled_lm"]["statistic"]), "", prob(c["pesaran_scaled_lm"]["prob"])});
    tc.row({"Pesaran CD", stat(c["pesaran_cd"]["statistic"]), "", prob(c["pesaran_cd"]["prob"])});
    tc.render(os);
    os << "Verdict: " << c["verdict"].get<std::string>() << "\n\n";

    const auto& b = j["breusch_pagan_godfrey"];
    os << "Heteroskedasticity test: Breusch-Pagan-Godfrey (" << b["residuals"].get<std::string>()
       << " residuals)\n";
    os << "Dependent Variable: RESIDUAL^2\n";
    os << "Method: Panel Least Squares\n";
    render_panel_header(os, j);
    os << '\n';
    render_coefficients(os, b["coefficients"]);
    os << '\n';
    const auto& s = b["statistics"];
    TextTable ts;
    ts.row({"R-squared", stat(s["r_squared"]), "Mean dependent var", stat(s["mean_dep"])});
    ts.row({"Adjusted R-squared", stat(s["adj_r_squared"]), "S.D. dependent var", stat(s["sd_dep"])});
    ts.row({"S.E. of regression", stat(s["se_regression"]), "Akaike info criterion", stat(s["aic"])});
    ts.row({"Sum squared resid", stat(s["ssr"]), "Schwarz criterion", stat(s["sic"])});
    ts.row({"Log likelihood", stat(s["log_likelihood"]), "Hannan-Quinn criter.", stat(s["hq"])});
    ts.row({"F-statistic", stat(s["f_statistic"]), "Durbin-Watson stat", stat(s["durbin_watson"])});
    ts.row({"Prob(F-statistic)", prob(s["f_prob"]), "", ""});
    ts.render(os, {true, false, true, false});
    os << '\n';
    TextTable tb;
    tb.row({"R-squared", stat(s["r_squared"])});
    tb.row({"Number of observations", integer(b["observations"])});
    tb.row({"Degrees of freedom", integer(b["dof"])});
    tb.row({"LM statistic", stat(b["lm_statistic"])});
    tb.row({"Breusch-Pagan-Godfrey probability", prob(b["prob"])});
    tb.render(os);
    os << "Verdict: " << b["verdict"].get<std::string>() << "\n\n";

    const auto& corr = j["correlations"];
    os << "Correlation matrix\n";
    TextTable tm;
    std::vector<std::string> head{""};
    for (const auto& n : corr["variables"]) head.push_back(n.get<std::string>());
    tm.row(head);
    for (std::size_t r = 0; r < corr["variables"].size(); ++r) {
        std::vector<std::string> cells{corr["variables"][r].get<std::string>()};
        for (const auto& v : corr["matrix"][r]) cells.push_back(stat(v));
        tm.row(cells);
    }
    tm.render(os);
    const auto& k = j["klein"];
    if (k["verdict"] == "not_applicable") {
        os << "Klein's criterion: not_applicable (fewer than two regressors)\n";
    } else {
        os << "Klein's criterion (" << k["rule"].get<std::string>() << "): " << k["verdict"].get<std::string>()
           << "\n";
        os << "Largest correlation: " << k["pair"][0].get<std::string>() << " / " << k["pair"][1].get<std::string>()
           << " = " << stat(k["max_abs_corr"]) << ", compared " << stat(k["compared_value"]) << " against R-squared "
           << stat(k["model_r_squared"]) << '\n';
    }
}

inline void render_figure(std::ostream& os, const Json& j) {
    os << "Scatter data: " << j["y"].get<std::string>() << " against " << j["x"].get<std::string>() << '\n';
    TextTable t;
    t.row({"Unit", "Period", j["x"].get<std::string>(), j["y"].get<std::string>()});
    for (const auto& p : j["points"])
        t.row({p["unit"].get<std::string>(), integer(p["period"]), stat(p["x"]), stat(p["y"])});
    t.render(os);
    os << "Observations: " << integer(j["observations"]) << '\n';
    os << "Pearson correlation: " << stat(j["pearson"]) << '\n';
    os << "R-squared: " << stat(j["r_squared"]) << '\n';
}

inline void render_delta(std::ostream& os, const Json& j) {
    os << "Change in " << j["variable"].get<std::string>() << ", " << integer(j["from"]) << " to "
       << integer(j["to"]) << " (percentage points)\n";
    TextTable t;
    t.row({"Unit", integer(j["from"]), integer(j["to"]), "Change"});
    for (const auto& r : j["units"])
        t.row({r["unit"].get<std::string>(), stat(r["from_value"]), stat(r["to_value"]), stat(r["delta_pp"])});
    if (!j["aggregate"].is_null()) {
        const auto& a = j["aggregate"];
        t.row({a["unit"].get<std::string>() + " (aggregate)", stat(a["from_value"]), stat(a["to_value"]),
               stat(a["delta_pp"])});
    }
    t.render(os);
}

} // namespace detail

/// Text report rendered purely from the JSON document, so a saved JSON re-renders identically.
inline std::string render_text(const Json& doc) {
    std::ostringstream os;
    bool first = true;
    auto section = [&](const char* key, auto&& fn) {
        if (!doc.contains(key)) return;
        if (!first) os << '\n';
        first = false;
        fn(doc[key]);
    };
    section("ingest", [&](const Json& j) { detail::render_ingest(os, j); });
    section("unit_root", [&](const Json& j) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) os << '\n';
            detail::render_unit_root(os, j[i]);
        }
    });
    section("estimation", [&](const Json& j) { detail::render_estimation(os, j); });
    section("diagnostics", [&](const Json& j) { detail::render_diagnostics(os, j); });
    section("figure", [&](const Json& j) { detail::render_figure(os, j); });
    section("delta", [&](const Json& j) { detail::render_delta(os, j); });
    return os.str();
}

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

inline void flatten(const Json& j, const std::string& path, std::ostream& os) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, os);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", os);
    } else {
        os << csv_field(path) << ',' << csv_field(j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
    }
}

} // namespace detail

/**
 * @brief CSV rendering. Figure and delta documents become row tables; other
 * documents are flattened to `key,value` lines with full-precision numbers.
 */
inline std::string render_csv(const Json& doc) {
    std::ostringstream os;
    if (doc.contains("figure")) {
        const auto& f = doc["figure"];
        os << "unit,period," << detail::csv_field(f["x"].get<std::string>()) << ','
           << detail::csv_field(f["y"].get<std::string>()) << '\n';
        for (const auto& p : f["points"])
            os << detail::csv_field(p["unit"].get<std::string>()) << ',' << p["period"].dump() << ','
               << p["x"].dump() << ',' << p["y"].dump() << '\n';
        os << "# pearson=" << f["pearson"].dump() << ",r_squared=" << f["r_squared"].dump() << '\n';
        return os.str();
    }
    if (doc.contains("delta")) {
        const auto& d = doc["delta"];
        os << "unit," << d["from"].dump() << ',' << d["to"].dump() << ",delta_pp\n";
        auto line = [&](const Json& r) {
            os << detail::csv_field(r["unit"].get<std::string>()) << ',' << r["from_value"].dump() << ','
               << r["to_value"].dump() << ',' << r["delta_pp"].dump() << '\n';
        };
        for (const auto& r : d["units"]) line(r);
        if (!d["aggregate"].is_null()) line(d["aggregate"]);
        return os.str();
    }
    os << "key,value\n";
    detail::flatten(doc, "", os);
    return os.str();
}

inline std::string render(const Json& doc, OutputFormat format) {
    switch (format) {
    case OutputFormat::json: return doc.dump(2) + "\n";
    case OutputFormat::csv: return render_csv(doc);
    case OutputFormat::text: return render_text(doc);
    }
    return {};
}

/// CLI exit status for an error category: 2 config, 3 data, 4 numeric.
inline int exit_code(ErrorCategory c) {
    switch (c) {
    case ErrorCategory::config: return 2;
    case ErrorCategory::data: return 3;
    case ErrorCategory::numeric: return 4;
    }
    return 1;
}

} // namespace pegls
