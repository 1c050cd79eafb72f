#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "oracles.hpp"
#include "pegls/report.hpp"

namespace fixture {

inline std::string path(const std::string& rel) { return std::string(PEGLS_SOURCE_DIR) + "/" + rel; }

inline nlohmann::json expected() {
    std::ifstream in(path("tests/data/fixture_expected.json"));
    return nlohmann::json::parse(in);
}

inline pegls::RunConfig config() { return pegls::load_config(path("fixtures/eq2_config.json")); }

inline Eigen::MatrixXd matrix(const nlohmann::json& rows) {
    const auto n = static_cast<Eigen::Index>(rows.size());
    const auto m = static_cast<Eigen::Index>(rows[0].size());
    Eigen::MatrixXd out(n, m);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < m; ++c) out(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    return out;
}

// Toy stacked data as a dataset; unit i is named by `unit_name(i)`.
template <class NameFn>
pegls::PanelDataset dataset(const oracle::Toy& t, NameFn unit_name) {
    std::vector<std::string> units;
    std::vector<int> periods;
    for (Eigen::Index i = 0; i < t.N; ++i) units.push_back(unit_name(i));
    for (Eigen::Index p = 0; p < t.T; ++p) periods.push_back(2000 + static_cast<int>(p));
    std::map<std::string, Eigen::MatrixXd> vars;
    vars["y"] = pegls::unstack(t.y, t.N, t.T);
    for (Eigen::Index c = 0; c + 1 < t.X.cols(); ++c)
        vars["x" + std::to_string(c)] = pegls::unstack(t.X.col(c), t.N, t.T);
    return pegls::PanelDataset(units, periods, vars);
}

inline pegls::PanelDataset dataset(const oracle::Toy& t) {
    return dataset(t, [](Eigen::Index i) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "u%03d", static_cast<int>(i));
        return std::string(buf);
    });
}

inline pegls::ModelSpec toy_model(const oracle::Toy& t) {
    pegls::ModelSpec m;
    m.dependent = "y";
    for (Eigen::Index c = 0; c + 1 < t.X.cols(); ++c) m.regressors.push_back("x" + std::to_string(c));
    return m;
}

} // namespace fixture
