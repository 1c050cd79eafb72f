#include <gtest/gtest.h>

#include "fixture.hpp"
#include "pegls/report.hpp"

using pegls::Json;

namespace {

pegls::RunConfig parse(const std::string& text) {
    return pegls::parse_config(Json::parse(text), fixture::path("fixtures"));
}

const char* kMinimal = R"({"data": "eu28_2010_2016.csv",
  "model": {"dependent": "povertyrate", "regressors": ["inworkpovertyrate"]}})";

double delta_of(const pegls::DeltaReport& d, const std::string& unit) {
    for (const auto& r : d.rows)
        if (r.unit == unit) return r.delta;
    ADD_FAILURE() << unit;
    return 0.0;
}

} // namespace

TEST(Config, FixtureConfigParses) {
    const auto c = fixture::config();
    EXPECT_EQ(c.equation_name, "EQPOVERTY01");
    EXPECT_EQ(c.model.dependent, "povertyrate");
    EXPECT_EQ(c.model.regressors.size(), 3u);
    ASSERT_TRUE(c.model.sample);
    EXPECT_EQ(c.model.sample->first, 2010);
    EXPECT_EQ(c.aggregate_unit, "EU28");
    EXPECT_EQ(c.battery_variables().size(), 4u);
    EXPECT_EQ(c.diagnostics.bpg_space, pegls::ResidualSpace::weighted);
}

TEST(Config, DefaultsAndOptions) {
    const auto c = parse(kMinimal);
    EXPECT_TRUE(c.model.include_constant);
    EXPECT_EQ(c.unit_root.vote_threshold, 7);
    EXPECT_EQ(c.egls.divisor, pegls::CovarianceDivisor::units);
    EXPECT_EQ(c.format, pegls::OutputFormat::text);
    EXPECT_FALSE(c.diagnostics.dw_bounds);

    const auto d = parse(R"({"data": "x.csv", "model": {"dependent": "y", "regressors": ["x"]},
        "egls": {"covariance_divisor": "N-1", "pcse_scaling": "none"},
        "diagnostics": {"dw_bounds": {"dl": 1.73445, "du": 1.79688}, "klein_rule": "abs_corr_below_r2"},
        "output": {"format": "csv"}})");
    EXPECT_EQ(d.egls.divisor, pegls::CovarianceDivisor::units_minus_one);
    EXPECT_EQ(d.egls.pcse, pegls::PcseScaling::none);
    ASSERT_TRUE(d.diagnostics.dw_bounds);
    EXPECT_DOUBLE_EQ(d.diagnostics.dw_bounds->du, 1.79688);
    EXPECT_EQ(d.diagnostics.klein_rule, pegls::KleinRule::abs_corr_below_r2);
    EXPECT_EQ(d.format, pegls::OutputFormat::csv);
}

TEST(Config, RejectsBadInput) {
    EXPECT_THROW(parse(R"({"data": "x.csv", "model": {"dependent": "y", "regressors": []}, "extra": 1})"),
                 pegls::ConfigError);
    EXPECT_THROW(parse(R"({"model": {"dependent": "y", "regressors": []}})"), pegls::ConfigError);
    EXPECT_THROW(parse(R"({"data": "x.csv", "model": {"dependent": "y", "regressors": ["x"]},
                           "egls": {"covariance_divisor": "T"}})"),
                 pegls::ConfigError);
    EXPECT_THROW(parse(R"({"data": "x.csv", "model": {"dependent": "y", "regressors": ["x"]},
                           "unit_root": {"vote_threshold": 13}})"),
                 pegls::ConfigError);
    EXPECT_THROW(parse(R"({"data": "x.csv", "model": {"dependent": "y", "regressors": ["x"]},
                           "diagnostics": {"dw_bounds": {"dl": 1.9, "du": 1.8}}})"),
                 pegls::ConfigError);
    EXPECT_THROW(parse(R"({"data": "x.csv", "model": {"dependent": "y", "regressors": ["x"], "sample": [2010]}})"),
                 pegls::ConfigError);
    EXPECT_THROW(parse(R"({"data": 5, "model": {"dependent": "y", "regressors": ["x"]}})"), pegls::ConfigError);
    EXPECT_THROW(pegls::load_config("/nonexistent/run.json"), pegls::ConfigError);
}

TEST(Config, UnknownVariableFailsValidation) {
    auto c = parse(kMinimal);
    c.model.regressors.push_back("gdp");
    EXPECT_THROW(pegls::run_pipeline(c, pegls::Stage::estimate), pegls::UnknownVariable);
}

TEST(Report, TextIsRenderedFromJson) {
    const auto cfg = fixture::config();
    const Json doc = pegls::run_pipeline(cfg, pegls::Stage::report);
    const std::string text = pegls::render_text(doc);
    const Json reparsed = Json::parse(doc.dump(2));
    EXPECT_EQ(pegls::render_text(reparsed), text);
    for (const char* key : {"ingest", "unit_root", "estimation", "diagnostics"}) EXPECT_TRUE(doc.contains(key));
    EXPECT_NE(text.find("INWORKPOVERTYRATE"), std::string::npos);
    EXPECT_NE(text.find("Jarque"), std::string::npos);
}

TEST(Report, Deterministic) {
    const auto cfg = fixture::config();
    const Json a = pegls::run_pipeline(cfg, pegls::Stage::report);
    const Json b = pegls::run_pipeline(cfg, pegls::Stage::report);
    for (auto f : {pegls::OutputFormat::text, pegls::OutputFormat::json, pegls::OutputFormat::csv})
        EXPECT_EQ(pegls::render(a, f), pegls::render(b, f));
}

TEST(Report, JsonCarriesEveryPrintedCoefficient) {
    const auto cfg = fixture::config();
    const Json doc = pegls::run_pipeline(cfg, pegls::Stage::estimate);
    const std::string text = pegls::render_text(doc);
    for (const auto& row : doc["estimation"]["coefficients"]) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6f", row["coefficient"].get<double>());
        EXPECT_NE(text.find(buf), std::string::npos) << buf;
    }
}

TEST(Report, StagesHoldOnlyTheirSections) {
    const auto cfg = fixture::config();
    const Json est = pegls::run_pipeline(cfg, pegls::Stage::estimate);
    EXPECT_TRUE(est.contains("estimation"));
    EXPECT_FALSE(est.contains("diagnostics"));
    EXPECT_FALSE(est.contains("unit_root"));
    const Json diag = pegls::run_pipeline(cfg, pegls::Stage::diagnose);
    EXPECT_TRUE(diag.contains("diagnostics"));
    EXPECT_FALSE(diag.contains("estimation"));
}

TEST(Figure, SelfPairIsPerfect) {
    const auto ds = pegls::load_run_data(fixture::config());
    const auto f = pegls::emit_figure_data(ds, "povertyrate", "povertyrate");
    EXPECT_NEAR(f.pearson, 1.0, 1e-14);
    EXPECT_NEAR(f.r_squared, 1.0, 1e-14);
    EXPECT_EQ(f.points.size(), 196u);
    EXPECT_THROW(pegls::emit_figure_data(ds, "povertyrate", "gdp"), pegls::UnknownVariable);
}

TEST(Figure, RSquaredIsSimpleRegression) {
    const auto ds = pegls::load_run_data(fixture::config());
    const auto f = pegls::emit_figure_data(ds, "inworkpovertyrate", "povertyrate");
    pegls::MatrixXd X(196, 2);
    X.col(0) = pegls::stack(ds.variable("inworkpovertyrate"));
    X.col(1).setOnes();
    const auto o = oracle::normal_equations(pegls::stack(ds.variable("povertyrate")), X);
    const pegls::VectorXd y = pegls::stack(ds.variable("povertyrate"));
    const double tss = (y.array() - y.mean()).square().sum();
    EXPECT_NEAR(f.r_squared, 1.0 - o.ssr / tss, 1e-12);

    const std::string csv = pegls::render_csv(Json{{"figure", pegls::figure_json(f)}});
    EXPECT_EQ(csv.rfind("unit,period,inworkpovertyrate,povertyrate\n", 0), 0u);
    EXPECT_NE(csv.find("\n# pearson="), std::string::npos);
}

TEST(Delta, SamePeriodIsZero) {
    const auto ds = pegls::load_run_data(fixture::config());
    const auto d = pegls::delta_report(ds, "povertyrate", 2013, 2013);
    ASSERT_EQ(d.rows.size(), 28u);
    for (const auto& r : d.rows) EXPECT_EQ(r.delta, 0.0);
    for (std::size_t i = 1; i < d.rows.size(); ++i) EXPECT_LT(d.rows[i - 1].unit, d.rows[i].unit);
}

TEST(Delta, SnapshotChanges) {
    const auto cfg = fixture::config();
    const auto ds = pegls::load_run_data(cfg);
    const auto agg = pegls::load_panel_csv(*cfg.aggregate_path, cfg.schema);
    const auto pov = pegls::delta_report(ds, "povertyrate", 2010, 2016, &agg, "EU28");
    EXPECT_NEAR(delta_of(pov, "EE"), 5.9, 0.05);
    EXPECT_NEAR(delta_of(pov, "RO"), 3.7, 0.05);
    EXPECT_NEAR(delta_of(pov, "FI"), -1.5, 0.05);
    ASSERT_TRUE(pov.aggregate);
    EXPECT_NEAR(pov.aggregate->delta, 0.8, 1e-9);
    for (std::size_t i = 1; i < pov.rows.size(); ++i) EXPECT_GE(pov.rows[i - 1].delta, pov.rows[i].delta);

    const auto neet = pegls::delta_report(ds, "NEETsrates", 2010, 2016);
    EXPECT_NEAR(delta_of(neet, "IE"), -6.8, 0.05);
    EXPECT_NEAR(delta_of(neet, "LV"), -6.6, 0.05);
    EXPECT_NEAR(delta_of(neet, "CY"), 4.3, 0.05);

    EXPECT_THROW(pegls::delta_report(ds, "povertyrate", 2009, 2016), pegls::InvalidWindow);
}

TEST(Report, ExitCodes) {
    EXPECT_EQ(pegls::exit_code(pegls::ErrorCategory::config), 2);
    EXPECT_EQ(pegls::exit_code(pegls::ErrorCategory::data), 3);
    EXPECT_EQ(pegls::exit_code(pegls::ErrorCategory::numeric), 4);
}
