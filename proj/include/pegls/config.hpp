#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "pegls/diagnostics.hpp"
#include "pegls/egls.hpp"
#include "pegls/error.hpp"
#include "pegls/panel.hpp"
#include "pegls/unitroot.hpp"

namespace pegls {

enum class OutputFormat { text, json, csv };

inline const char* to_string(OutputFormat f) {
    switch (f) {
    case OutputFormat::text: return "text";
    case OutputFormat::json: return "json";
    case OutputFormat::csv: return "csv";
    }
    return "?";
}

/// Everything one pipeline run needs. Relative paths resolve against the config file's directory.
struct RunConfig {
    std::filesystem::path data_path;
    CsvSchema schema;
    std::optional<std::filesystem::path> aggregate_path;
    std::string aggregate_unit = "EU28";
    std::string equation_name = "EQ01";
    ModelSpec model;
    std::vector<std::string> unit_root_variables; ///< dependent and regressors when empty
    UnitRootOptions unit_root;
    EglsOptions egls;
    std::optional<MatrixXd> period_covariance; ///< supplied Σ instead of the estimated one
    DiagnosticsOptions diagnostics;
    OutputFormat format = OutputFormat::text;

    std::vector<std::string> battery_variables() const {
        if (!unit_root_variables.empty()) return unit_root_variables;
        std::vector<std::string> v{model.dependent};
        v.insert(v.end(), model.regressors.begin(), model.regressors.end());
        return v;
    }
};

namespace detail {

using Json = nlohmann::ordered_json;

inline void reject_unknown_keys(const Json& obj, const std::string& where, std::initializer_list<const char*> known) {
    if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
    const std::set<std::string> allowed(known.begin(), known.end());
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
}

template <class T>
T get_as(const Json& obj, const char* key, const std::string& where) {
    try {
        return obj.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(where + "." + key + ": " + e.what());
    }
}

template <class T>
std::optional<T> get_opt(const Json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
    return get_as<T>(obj, key, where);
}

template <class E>
E parse_choice(const std::string& value, const std::string& where,
               std::initializer_list<std::pair<const char*, E>> choices) {
    std::string listed;
    for (const auto& [name, e] : choices) {
        if (value == name) return e;
        listed += listed.empty() ? name : std::string(", ") + name;
    }
    throw ConfigError(where + ": '" + value + "' is not one of {" + listed + "}");
}

} // namespace detail

inline OutputFormat parse_output_format(const std::string& s) {
    return detail::parse_choice<OutputFormat>(
        s, "output format",
        {{"text", OutputFormat::text}, {"json", OutputFormat::json}, {"csv", OutputFormat::csv}});
}

/// Parses a run config; `base_dir` anchors relative paths.
inline RunConfig parse_config(const nlohmann::ordered_json& j, const std::filesystem::path& base_dir) {
    using detail::get_as;
    using detail::get_opt;
    using detail::parse_choice;
    detail::reject_unknown_keys(j, "config",
                                {"data", "schema", "aggregate", "model", "unit_root", "egls", "diagnostics", "output"});
    RunConfig c;
    auto resolve = [&](const std::string& p) {
        std::filesystem::path path(p);
        return path.is_absolute() ? path : base_dir / path;
    };
    if (!j.contains("data")) throw ConfigError("config: missing 'data'");
    c.data_path = resolve(get_as<std::string>(j, "data", "config"));

    if (j.contains("schema")) {
        const auto& s = j.at("schema");
        detail::reject_unknown_keys(s, "schema",
                                    {"layout", "unit_column", "period_column", "variable_column", "value_column",
                                     "variable_name"});
        if (auto v = get_opt<std::string>(s, "layout", "schema"))
            c.schema.layout = parse_choice<CsvLayout>(*v, "schema.layout",
                                                      {{"long", CsvLayout::long_format},
                                                       {"wide", CsvLayout::wide_format}});
        if (auto v = get_opt<std::string>(s, "unit_column", "schema")) c.schema.unit_column = *v;
        if (auto v = get_opt<std::string>(s, "period_column", "schema")) c.schema.period_column = *v;
        if (auto v = get_opt<std::string>(s, "variable_column", "schema")) c.schema.variable_column = *v;
        if (auto v = get_opt<std::string>(s, "value_column", "schema")) c.schema.value_column = *v;
        if (auto v = get_opt<std::string>(s, "variable_name", "schema")) c.schema.variable_name = *v;
    }

    if (j.contains("aggregate")) {
        const auto& a = j.at("aggregate");
        if (a.is_string()) {
            c.aggregate_path = resolve(a.get<std::string>());
        } else {
            detail::reject_unknown_keys(a, "aggregate", {"path", "unit"});
            c.aggregate_path = resolve(get_as<std::string>(a, "path", "aggregate"));
            if (auto u = get_opt<std::string>(a, "unit", "aggregate")) c.aggregate_unit = *u;
        }
    }

    if (!j.contains("model")) throw ConfigError("config: missing 'model'");
    const auto& m = j.at("model");
    detail::reject_unknown_keys(m, "model", {"name", "dependent", "regressors", "constant", "sample"});
    c.model.dependent = get_as<std::string>(m, "dependent", "model");
    c.model.regressors = get_as<std::vector<std::string>>(m, "regressors", "model");
    c.model.include_constant = get_opt<bool>(m, "constant", "model").value_or(true);
    if (auto name = get_opt<std::string>(m, "name", "model")) c.equation_name = *name;
    if (auto s = get_opt<std::vector<int>>(m, "sample", "model")) {
        if (s->size() != 2) throw ConfigError("model.sample must be [first, last]");
        c.model.sample = PeriodWindow{(*s)[0], (*s)[1]};
    }

    if (j.contains("unit_root")) {
        const auto& u = j.at("unit_root");
        detail::reject_unknown_keys(u, "unit_root", {"variables", "max_lag", "vote_threshold"});
        if (auto v = get_opt<std::vector<std::string>>(u, "variables", "unit_root")) c.unit_root_variables = *v;
        if (auto v = get_opt<long>(u, "max_lag", "unit_root")) {
            if (*v < 0) throw ConfigError("unit_root.max_lag must be >= 0");
            c.unit_root.max_lag = static_cast<Index>(*v);
        }
        if (auto v = get_opt<int>(u, "vote_threshold", "unit_root")) {
            if (*v < 1 || *v > 12) throw ConfigError("unit_root.vote_threshold must lie in 1..12");
            c.unit_root.vote_threshold = *v;
        }
    }

    if (j.contains("egls")) {
        const auto& e = j.at("egls");
        detail::reject_unknown_keys(e, "egls", {"covariance_divisor", "pcse_scaling", "period_covariance"});
        if (auto v = get_opt<std::string>(e, "covariance_divisor", "egls"))
            c.egls.divisor = parse_choice<CovarianceDivisor>(
                *v, "egls.covariance_divisor",
                {{"N", CovarianceDivisor::units}, {"N-1", CovarianceDivisor::units_minus_one}});
        if (auto v = get_opt<std::string>(e, "pcse_scaling", "egls"))
            c.egls.pcse = parse_choice<PcseScaling>(
                *v, "egls.pcse_scaling", {{"df_corrected", PcseScaling::df_corrected}, {"none", PcseScaling::none}});
        if (auto rows = get_opt<std::vector<std::vector<double>>>(e, "period_covariance", "egls")) {
            const auto T = static_cast<Index>(rows->size());
            MatrixXd sigma(T, T);
            for (Index r = 0; r < T; ++r) {
                const auto& row = (*rows)[static_cast<std::size_t>(r)];
                if (static_cast<Index>(row.size()) != T)
                    throw ConfigError("egls.period_covariance must be a square matrix");
                for (Index col = 0; col < T; ++col) sigma(r, col) = row[static_cast<std::size_t>(col)];
            }
            c.period_covariance = sigma;
        }
    }

    if (j.contains("diagnostics")) {
        const auto& d = j.at("diagnostics");
        detail::reject_unknown_keys(d, "diagnostics",
                                    {"dw_bounds", "bpg_residuals", "csd_residuals", "csd_demean", "klein_rule"});
        if (d.contains("dw_bounds") && !d.at("dw_bounds").is_null()) {
            const auto& b = d.at("dw_bounds");
            if (b.is_string()) {
                if (b.get<std::string>() != "table")
                    throw ConfigError("diagnostics.dw_bounds must be \"table\" or {\"dl\": …, \"du\": …}");
            } else {
                detail::reject_unknown_keys(b, "diagnostics.dw_bounds", {"dl", "du"});
                DwBounds bounds;
                bounds.dl = get_as<double>(b, "dl", "diagnostics.dw_bounds");
                bounds.du = get_as<double>(b, "du", "diagnostics.dw_bounds");
                bounds.validate();
                c.diagnostics.dw_bounds = bounds;
            }
        }
        auto space = [&](const char* key, ResidualSpace& out) {
            if (auto v = get_opt<std::string>(d, key, "diagnostics"))
                out = parse_choice<ResidualSpace>(*v, std::string("diagnostics.") + key,
                                                  {{"weighted", ResidualSpace::weighted},
                                                   {"unweighted", ResidualSpace::unweighted}});
        };
        space("bpg_residuals", c.diagnostics.bpg_space);
        space("csd_residuals", c.diagnostics.csd_space);
        if (auto v = get_opt<bool>(d, "csd_demean", "diagnostics")) c.diagnostics.csd_demean = *v;
        if (auto v = get_opt<std::string>(d, "klein_rule", "diagnostics"))
            c.diagnostics.klein_rule = parse_choice<KleinRule>(
                *v, "diagnostics.klein_rule",
                {{"squared_corr_below_r2", KleinRule::squared_corr_below_r2},
                 {"abs_corr_below_r2", KleinRule::abs_corr_below_r2}});
    }

    if (j.contains("output")) {
        const auto& o = j.at("output");
        detail::reject_unknown_keys(o, "output", {"format"});
        if (auto v = get_opt<std::string>(o, "format", "output")) c.format = parse_output_format(*v);
    }
    return c;
}

inline RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return parse_config(j, path.parent_path());
}

} // namespace pegls
