#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pegls/error.hpp"

namespace pegls {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/**
 * @brief Balanced N×T panel of named numeric variables.
 *
 * Cross-sections are kept sorted by id and periods ascending, so two datasets
 * built from the same cells compare equal whatever order the cells arrived in.
 * Every variable is an N×T matrix (row = unit, column = period) of finite values.
 * Instances are immutable once constructed.
 */
class PanelDataset {
public:
    PanelDataset() = default;

    PanelDataset(std::vector<std::string> units, std::vector<int> periods,
                 std::map<std::string, MatrixXd> variables)
        : units_(std::move(units)), periods_(std::move(periods)), variables_(std::move(variables)) {
        canonicalize();
        validate();
    }

    Index units() const { return static_cast<Index>(units_.size()); }
    Index periods() const { return static_cast<Index>(periods_.size()); }
    Index observations() const { return units() * periods(); }

    const std::vector<std::string>& unit_ids() const { return units_; }
    const std::vector<int>& period_ids() const { return periods_; }

    bool has_variable(const std::string& name) const { return variables_.count(name) != 0; }

    std::vector<std::string> variable_names() const {
        std::vector<std::string> names;
        for (const auto& [name, _] : variables_) names.push_back(name);
        return names;
    }

    const MatrixXd& variable(const std::string& name) const {
        auto it = variables_.find(name);
        if (it == variables_.end()) throw UnknownVariable("unknown variable '" + name + "'");
        return it->second;
    }

    std::optional<Index> unit_index(std::string_view id) const {
        auto it = std::find(units_.begin(), units_.end(), id);
        if (it == units_.end()) return std::nullopt;
        return static_cast<Index>(it - units_.begin());
    }

    std::optional<Index> period_index(int period) const {
        auto it = std::find(periods_.begin(), periods_.end(), period);
        if (it == periods_.end()) return std::nullopt;
        return static_cast<Index>(it - periods_.begin());
    }

    friend bool operator==(const PanelDataset& a, const PanelDataset& b) {
        if (a.units_ != b.units_ || a.periods_ != b.periods_) return false;
        if (a.variables_.size() != b.variables_.size()) return false;
        for (const auto& [name, m] : a.variables_) {
            auto it = b.variables_.find(name);
            if (it == b.variables_.end() || it->second != m) return false;
        }
        return true;
    }

private:
    void canonicalize() {
        std::vector<std::size_t> order(units_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return units_[a] < units_[b]; });
        std::vector<std::size_t> porder(periods_.size());
        for (std::size_t i = 0; i < porder.size(); ++i) porder[i] = i;
        std::sort(porder.begin(), porder.end(),
                  [&](std::size_t a, std::size_t b) { return periods_[a] < periods_[b]; });

        std::vector<std::string> units(units_.size());
        std::vector<int> periods(periods_.size());
        for (std::size_t i = 0; i < order.size(); ++i) units[i] = units_[order[i]];
        for (std::size_t j = 0; j < porder.size(); ++j) periods[j] = periods_[porder[j]];
        for (auto& [name, m] : variables_) {
            if (m.rows() != static_cast<Index>(units_.size()) ||
                m.cols() != static_cast<Index>(periods_.size())) {
                throw UnbalancedPanel("variable '" + name + "' is " + std::to_string(m.rows()) + "x" +
                                      std::to_string(m.cols()) + ", expected " +
                                      std::to_string(units_.size()) + "x" +
                                      std::to_string(periods_.size()));
            }
            MatrixXd sorted(m.rows(), m.cols());
            for (std::size_t i = 0; i < order.size(); ++i)
                for (std::size_t j = 0; j < porder.size(); ++j)
                    sorted(static_cast<Index>(i), static_cast<Index>(j)) =
                        m(static_cast<Index>(order[i]), static_cast<Index>(porder[j]));
            m = std::move(sorted);
        }
        units_ = std::move(units);
        periods_ = std::move(periods);
    }

    void validate() const {
        if (units_.empty() || periods_.empty() || variables_.empty())
            throw UnbalancedPanel("empty panel");
        for (std::size_t i = 1; i < units_.size(); ++i)
            if (units_[i] == units_[i - 1])
                throw DuplicateObservation("duplicate cross-section id '" + units_[i] + "'");
        for (std::size_t j = 1; j < periods_.size(); ++j)
            if (periods_[j] == periods_[j - 1])
                throw DuplicateObservation("duplicate period " + std::to_string(periods_[j]));
        for (const auto& [name, m] : variables_)
            for (Index i = 0; i < m.rows(); ++i)
                for (Index j = 0; j < m.cols(); ++j)
                    if (!std::isfinite(m(i, j)))
                        throw UnbalancedPanel("missing or non-finite value at (" +
                                              units_[static_cast<std::size_t>(i)] + ", " +
                                              std::to_string(periods_[static_cast<std::size_t>(j)]) +
                                              ", " + name + ")");
    }

    std::vector<std::string> units_;
    std::vector<int> periods_;
    std::map<std::string, MatrixXd> variables_;
};

/// Closed period range [first, last].
struct PeriodWindow {
    int first = 0;
    int last = 0;
};

/// Regression model on a panel: dependent ~ regressors (+ C).
struct ModelSpec {
    std::string dependent;
    std::vector<std::string> regressors;
    bool include_constant = true;
    std::optional<PeriodWindow> sample;

    /// Checks the invariants against `ds`; throws UnknownVariable / InvalidModel / InvalidWindow.
    void validate(const PanelDataset& ds) const {
        if (!ds.has_variable(dependent)) throw UnknownVariable("unknown variable '" + dependent + "'");
        std::set<std::string> seen;
        for (const auto& r : regressors) {
            if (!ds.has_variable(r)) throw UnknownVariable("unknown variable '" + r + "'");
            if (r == dependent) throw InvalidModel("dependent '" + r + "' listed as a regressor");
            if (!seen.insert(r).second) throw InvalidModel("regressor '" + r + "' listed twice");
        }
        if (regressors.empty() && !include_constant) throw InvalidModel("model has no regressors");
        if (sample) {
            if (sample->first > sample->last)
                throw InvalidWindow("empty sample window " + std::to_string(sample->first) + "-" +
                                    std::to_string(sample->last));
            if (!ds.period_index(sample->first) || !ds.period_index(sample->last))
                throw InvalidWindow("sample window outside dataset periods");
        }
    }
};

/**
 * @brief Returns the balanced sub-panel holding `vars` over `window`.
 *
 * Idempotent; subsetting to all variables and the full period range returns an
 * equal dataset.
 */
inline PanelDataset subset(const PanelDataset& ds, const std::vector<std::string>& vars,
                           PeriodWindow window) {
    if (window.first > window.last)
        throw InvalidWindow("empty window " + std::to_string(window.first) + "-" +
                            std::to_string(window.last));
    if (vars.empty()) throw UnknownVariable("no variables requested");
    std::vector<Index> cols;
    std::vector<int> periods;
    for (Index j = 0; j < ds.periods(); ++j) {
        const int p = ds.period_ids()[static_cast<std::size_t>(j)];
        if (p >= window.first && p <= window.last) {
            cols.push_back(j);
            periods.push_back(p);
        }
    }
    if (cols.empty() || window.first < ds.period_ids().front() || window.last > ds.period_ids().back())
        throw InvalidWindow("window " + std::to_string(window.first) + "-" +
                            std::to_string(window.last) + " not within dataset periods");
    std::map<std::string, MatrixXd> out;
    for (const auto& v : vars) {
        const MatrixXd& m = ds.variable(v);
        MatrixXd sub(m.rows(), static_cast<Index>(cols.size()));
        for (std::size_t c = 0; c < cols.size(); ++c) sub.col(static_cast<Index>(c)) = m.col(cols[c]);
        out.emplace(v, std::move(sub));
    }
    return PanelDataset(ds.unit_ids(), std::move(periods), std::move(out));
}

/// Full-variable convenience overload.
inline PanelDataset subset(const PanelDataset& ds, PeriodWindow window) {
    return subset(ds, ds.variable_names(), window);
}

// ---------------------------------------------------------------------------
// CSV ingestion

enum class CsvLayout { long_format, wide_format };

/**
 * @brief Column roles of a panel CSV.
 *
 * Long layout: one row per (unit, period, variable) cell.
 * Wide layout: one row per (unit, variable); every header that parses as an
 * integer is a period column. When `variable_column` is empty in wide layout the
 * whole file is a single variable named `variable_name`.
 */
struct CsvSchema {
    CsvLayout layout = CsvLayout::long_format;
    std::string unit_column = "geo";
    std::string period_column = "time";
    std::string variable_column = "variable";
    std::string value_column = "value";
    std::string variable_name;
};

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r' || s[b] == '\n')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r' || s[e - 1] == '\n')) --e;
    return std::string(s.substr(b, e - b));
}

// RFC 4180 style: commas separate fields, double quotes protect commas and
// escape themselves by doubling.
inline std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(trim(cur));
    return fields;
}

inline std::optional<double> parse_value(const std::string& cell) {
    if (cell.empty() || cell == ":") return std::nullopt;
    double v = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v)) return std::nullopt;
    return v;
}

inline std::optional<int> parse_period(const std::string& cell) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) return std::nullopt;
    return v;
}

inline std::size_t column_of(const std::vector<std::string>& header, const std::string& name,
                             const std::string& path) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
        throw DataFileError(path + ": header has no column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
}

using CellKey = std::tuple<std::string, std::string, int>; // variable, unit, period

inline std::string describe(const std::string& unit, int period, const std::string& var) {
    return "(" + unit + ", " + std::to_string(period) + ", " + var + ")";
}

} // namespace detail

/**
 * @brief Parses panel CSV text into a PanelDataset.
 *
 * Missing cells (":", empty, non-numeric or absent rows) raise UnbalancedPanel
 * naming the first offending (unit, period, variable) triple in canonical order;
 * a repeated cell raises DuplicateObservation.
 */
inline PanelDataset parse_panel_csv(std::istream& in, const CsvSchema& schema,
                                    const std::string& source = "<stream>") {
    std::string line;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        if (detail::trim(line).empty()) continue;
        if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF &&
            static_cast<unsigned char>(line[1]) == 0xBB && static_cast<unsigned char>(line[2]) == 0xBF)
            line.erase(0, 3);
        header = detail::split_csv_line(line);
        break;
    }
    if (header.empty()) throw UnbalancedPanel(source + ": empty file");

    std::map<detail::CellKey, std::optional<double>> cells;
    std::set<std::string> units, vars;
    std::set<int> periods;

    auto record = [&](const std::string& var, const std::string& unit, int period,
                      std::optional<double> value) {
        if (var.empty() || unit.empty()) throw DataFileError(source + ": blank unit or variable id");
        if (!cells.emplace(detail::CellKey{var, unit, period}, value).second)
            throw DuplicateObservation(source + ": duplicate observation " +
                                       detail::describe(unit, period, var));
        units.insert(unit);
        vars.insert(var);
        periods.insert(period);
    };

    std::size_t lineno = 1;
    if (schema.layout == CsvLayout::long_format) {
        const auto cu = detail::column_of(header, schema.unit_column, source);
        const auto cp = detail::column_of(header, schema.period_column, source);
        const auto cv = detail::column_of(header, schema.variable_column, source);
        const auto cx = detail::column_of(header, schema.value_column, source);
        while (std::getline(in, line)) {
            ++lineno;
            if (detail::trim(line).empty()) continue;
            auto f = detail::split_csv_line(line);
            if (f.size() != header.size())
                throw DataFileError(source + ":" + std::to_string(lineno) + ": expected " +
                                    std::to_string(header.size()) + " fields, got " +
                                    std::to_string(f.size()));
            auto period = detail::parse_period(f[cp]);
            if (!period)
                throw DataFileError(source + ":" + std::to_string(lineno) + ": period '" + f[cp] +
                                    "' is not an integer");
            record(f[cv], f[cu], *period, detail::parse_value(f[cx]));
        }
    } else {
        const auto cu = detail::column_of(header, schema.unit_column, source);
        std::optional<std::size_t> cv;
        if (!schema.variable_column.empty()) cv = detail::column_of(header, schema.variable_column, source);
        else if (schema.variable_name.empty())
            throw DataFileError(source + ": wide layout needs a variable column or a variable name");
        std::vector<std::pair<std::size_t, int>> period_cols;
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (c == cu || (cv && c == *cv)) continue;
            if (auto p = detail::parse_period(header[c])) period_cols.emplace_back(c, *p);
        }
        if (period_cols.empty()) throw DataFileError(source + ": wide layout has no period columns");
        while (std::getline(in, line)) {
            ++lineno;
            if (detail::trim(line).empty()) continue;
            auto f = detail::split_csv_line(line);
            if (f.size() != header.size())
                throw DataFileError(source + ":" + std::to_string(lineno) + ": expected " +
                                    std::to_string(header.size()) + " fields, got " +
                                    std::to_string(f.size()));
            const std::string var = cv ? f[*cv] : schema.variable_name;
            for (auto [c, p] : period_cols) record(var, f[cu], p, detail::parse_value(f[c]));
        }
    }
    if (cells.empty()) throw UnbalancedPanel(source + ": no observations");

    const std::vector<std::string> unit_list(units.begin(), units.end());
    const std::vector<int> period_list(periods.begin(), periods.end());
    std::map<std::string, MatrixXd> variables;
    for (const auto& var : vars) {
        MatrixXd m(static_cast<Index>(unit_list.size()), static_cast<Index>(period_list.size()));
        for (std::size_t i = 0; i < unit_list.size(); ++i) {
            for (std::size_t j = 0; j < period_list.size(); ++j) {
                auto it = cells.find({var, unit_list[i], period_list[j]});
                if (it == cells.end() || !it->second)
                    throw UnbalancedPanel(source + ": missing observation " +
                                          detail::describe(unit_list[i], period_list[j], var));
                m(static_cast<Index>(i), static_cast<Index>(j)) = *it->second;
            }
        }
        variables.emplace(var, std::move(m));
    }
    return PanelDataset(unit_list, period_list, std::move(variables));
}

/// Loads a panel CSV file; see parse_panel_csv.
inline PanelDataset load_panel_csv(const std::filesystem::path& path, const CsvSchema& schema = {}) {
    std::ifstream in(path);
    if (!in) throw DataFileError("cannot open '" + path.string() + "'");
    return parse_panel_csv(in, schema, path.string());
}

// ---------------------------------------------------------------------------
// Stacked regression design

/**
 * @brief Dependent vector and design matrix stacked unit-major, period-minor.
 *
 * Row i*T + t holds unit i in period t. The constant column, when present, is last.
 */
struct StackedDesign {
    VectorXd y;
    MatrixXd X;
    std::vector<std::string> column_names;
    std::optional<Index> constant_column;
    Index units = 0;
    Index periods = 0;
    std::vector<std::string> unit_ids;
    std::vector<int> period_ids;
    std::string dependent;
};

inline VectorXd stack(const MatrixXd& unit_by_period) {
    VectorXd out(unit_by_period.size());
    for (Index i = 0; i < unit_by_period.rows(); ++i)
        out.segment(i * unit_by_period.cols(), unit_by_period.cols()) = unit_by_period.row(i).transpose();
    return out;
}

inline MatrixXd unstack(const VectorXd& stacked, Index units, Index periods) {
    MatrixXd out(units, periods);
    for (Index i = 0; i < units; ++i) out.row(i) = stacked.segment(i * periods, periods).transpose();
    return out;
}

inline StackedDesign stack_design(const PanelDataset& ds, const ModelSpec& spec) {
    spec.validate(ds);
    const PanelDataset window =
        spec.sample ? subset(ds, ds.variable_names(), *spec.sample) : ds;
    StackedDesign d;
    d.units = window.units();
    d.periods = window.periods();
    d.unit_ids = window.unit_ids();
    d.period_ids = window.period_ids();
    d.dependent = spec.dependent;
    d.y = stack(window.variable(spec.dependent));
    const Index k = static_cast<Index>(spec.regressors.size()) + (spec.include_constant ? 1 : 0);
    d.X.resize(d.y.size(), k);
    for (std::size_t c = 0; c < spec.regressors.size(); ++c) {
        d.X.col(static_cast<Index>(c)) = stack(window.variable(spec.regressors[c]));
        d.column_names.push_back(spec.regressors[c]);
    }
    if (spec.include_constant) {
        d.X.col(k - 1).setOnes();
        d.column_names.push_back("C");
        d.constant_column = k - 1;
    }
    return d;
}

} // namespace pegls
