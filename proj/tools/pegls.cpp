// pegls: panel EGLS pipeline driver.
//
//   pegls report --config run.json [--emit text|json|csv] [--out FILE]
//   pegls figure --config run.json --x VAR --y VAR
//   pegls delta --config run.json --var VAR --from 2010 --to 2016
//   pegls render --from report.json

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pegls/report.hpp"

namespace {

struct Common {
    std::string config;
    std::optional<std::string> emit;
    std::string out;
};

void add_common(CLI::App* cmd, Common& c, bool config_required = true) {
    auto* opt = cmd->add_option("--config", c.config, "Run configuration (JSON)");
    if (config_required) opt->required();
    cmd->add_option("--emit", c.emit, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_option("--out", c.out, "Write the report to this file instead of stdout");
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw pegls::ConfigError("cannot write '" + path + "'");
    out << text;
}

pegls::OutputFormat format_of(const Common& c, const pegls::RunConfig* cfg) {
    if (c.emit) return pegls::parse_output_format(*c.emit);
    return cfg ? cfg->format : pegls::OutputFormat::text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Panel EGLS (Period SUR) estimation with unit-root and residual diagnostics"};
    app.require_subcommand(1);

    Common common;
    bool validate_only = false;
    std::string fig_x, fig_y, delta_var, render_from;
    int delta_from = 0, delta_to = 0;

    auto* ingest = app.add_subcommand("ingest", "Load and validate the panel");
    add_common(ingest, common);
    ingest->add_flag("--validate", validate_only, "Only check the data and model variables");
    auto* unit_root = app.add_subcommand("unit-root", "Panel unit-root battery per variable");
    add_common(unit_root, common);
    auto* estimate = app.add_subcommand("estimate", "Panel EGLS with Period SUR weighting");
    add_common(estimate, common);
    auto* diagnose = app.add_subcommand("diagnose", "Residual diagnostics of the estimated model");
    add_common(diagnose, common);
    auto* report = app.add_subcommand("report", "Full pipeline: ingest, unit root, estimate, diagnose");
    add_common(report, common);
    auto* figure = app.add_subcommand("figure", "Scatter data and pooled correlation for two variables");
    add_common(figure, common);
    figure->add_option("--x", fig_x, "Horizontal-axis variable")->required();
    figure->add_option("--y", fig_y, "Vertical-axis variable")->required();
    auto* delta = app.add_subcommand("delta", "Per-unit change of a variable between two periods");
    add_common(delta, common);
    delta->add_option("--var", delta_var, "Variable")->required();
    delta->add_option("--from", delta_from, "First period")->required();
    delta->add_option("--to", delta_to, "Last period")->required();
    auto* render = app.add_subcommand("render", "Re-render a saved JSON report");
    add_common(render, common, false);
    render->add_option("--from", render_from, "JSON report written with --emit json")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (render->parsed()) {
            std::ifstream in(render_from);
            if (!in) throw pegls::ConfigError("cannot open '" + render_from + "'");
            pegls::Json doc;
            try {
                doc = pegls::Json::parse(in);
            } catch (const nlohmann::json::exception& e) {
                throw pegls::ConfigError(render_from + ": " + e.what());
            }
            write_output(pegls::render(doc, format_of(common, nullptr)), common.out);
            return 0;
        }

        const pegls::RunConfig cfg = pegls::load_config(common.config);
        const auto format = format_of(common, &cfg);
        pegls::Json doc;
        if (ingest->parsed()) {
            doc = pegls::run_pipeline(cfg, pegls::Stage::ingest);
            if (validate_only) doc["valid"] = true;
        } else if (unit_root->parsed()) {
            doc = pegls::run_pipeline(cfg, pegls::Stage::unit_root);
        } else if (estimate->parsed()) {
            doc = pegls::run_pipeline(cfg, pegls::Stage::estimate);
        } else if (diagnose->parsed()) {
            doc = pegls::run_pipeline(cfg, pegls::Stage::diagnose);
        } else if (report->parsed()) {
            doc = pegls::run_pipeline(cfg, pegls::Stage::report);
        } else if (figure->parsed()) {
            const auto ds = pegls::load_run_data(cfg);
            doc["command"] = "figure";
            doc["figure"] = pegls::figure_json(pegls::emit_figure_data(ds, fig_x, fig_y));
        } else if (delta->parsed()) {
            const auto ds = pegls::load_run_data(cfg);
            std::optional<pegls::PanelDataset> agg;
            if (cfg.aggregate_path) agg = pegls::load_panel_csv(*cfg.aggregate_path, cfg.schema);
            doc["command"] = "delta";
            doc["delta"] = pegls::delta_json(pegls::delta_report(ds, delta_var, delta_from, delta_to,
                                                                 agg ? &*agg : nullptr, cfg.aggregate_unit));
        }
        write_output(pegls::render(doc, format), common.out);
        return 0;
    } catch (const pegls::Error& e) {
        std::cerr << "pegls: " << e.name() << ": " << e.what() << '\n';
        return pegls::exit_code(e.category());
    }
}
