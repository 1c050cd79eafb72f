#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "pegls/error.hpp"
#include "pegls/unitroot/ips_moments_table.hpp"
#include "pegls/unitroot/mackinnon.hpp"

namespace pegls {

/// Mean and standard-deviation adjustment of the LLC pooled t-statistic.
struct LlcAdjustment {
    double mean = 0.0;
    double sd = 1.0;
};

namespace detail {

// Levin, Lin & Chu (2002), Table 2: mean (μ*) and standard deviation (σ*)
// adjustments by average time-series length T̃, for the model without
// deterministic terms, with a constant, and with constant and trend.
struct LlcRow {
    double length;
    double mean_none, sd_none;
    double mean_const, sd_const;
    double mean_trend, sd_trend;
};

inline constexpr LlcRow kLlcTable[] = {
    {25, 0.004, 1.049, -0.554, 0.919, -0.703, 1.003},
    {30, 0.003, 1.035, -0.546, 0.889, -0.674, 0.949},
    {35, 0.002, 1.027, -0.541, 0.867, -0.653, 0.906},
    {40, 0.002, 1.021, -0.537, 0.850, -0.637, 0.871},
    {45, 0.001, 1.017, -0.533, 0.837, -0.624, 0.842},
    {50, 0.001, 1.014, -0.531, 0.826, -0.614, 0.818},
    {60, 0.001, 1.011, -0.527, 0.810, -0.598, 0.780},
    {70, 0.000, 1.008, -0.524, 0.798, -0.587, 0.751},
    {80, 0.000, 1.007, -0.521, 0.789, -0.578, 0.728},
    {90, 0.000, 1.006, -0.520, 0.782, -0.571, 0.710},
    {100, 0.000, 1.005, -0.518, 0.776, -0.566, 0.695},
    {250, 0.000, 1.001, -0.509, 0.742, -0.533, 0.603},
};

inline LlcAdjustment llc_row_values(const LlcRow& r, DeterministicSpec spec) {
    switch (spec) {
    case DeterministicSpec::none: return {r.mean_none, r.sd_none};
    case DeterministicSpec::constant_only: return {r.mean_const, r.sd_const};
    case DeterministicSpec::trend_and_constant: return {r.mean_trend, r.sd_trend};
    }
    return {};
}

} // namespace detail

/**
 * @brief LLC adjustment at average length `t_tilde`, linearly interpolated.
 *
 * Lengths below the first row (25) use that row; lengths above 250 use the 250 row.
 */
inline LlcAdjustment llc_adjustment(double t_tilde, DeterministicSpec spec) {
    const auto& table = detail::kLlcTable;
    constexpr std::size_t rows = std::size(detail::kLlcTable);
    if (t_tilde <= table[0].length) return detail::llc_row_values(table[0], spec);
    if (t_tilde >= table[rows - 1].length) return detail::llc_row_values(table[rows - 1], spec);
    std::size_t hi = 1;
    while (table[hi].length < t_tilde) ++hi;
    const auto lo_v = detail::llc_row_values(table[hi - 1], spec);
    const auto hi_v = detail::llc_row_values(table[hi], spec);
    const double w = (t_tilde - table[hi - 1].length) / (table[hi].length - table[hi - 1].length);
    return {lo_v.mean + w * (hi_v.mean - lo_v.mean), lo_v.sd + w * (hi_v.sd - lo_v.sd)};
}

/// Mean and variance of the ADF tau under the unit-root null.
struct TauMoments {
    double mean = 0.0;
    double variance = 0.0;
};

namespace detail {

inline const IpsMomentCell* find_ips_cell(bool trend, int length, int lag) {
    for (const auto& c : kIpsMoments)
        if (c.trend == (trend ? 1 : 0) && c.length == length && c.lag == lag) return &c;
    return nullptr;
}

inline int ips_min_length() {
    int m = kIpsMoments[0].length;
    for (const auto& c : kIpsMoments) m = std::min(m, c.length);
    return m;
}

inline int ips_max_length() {
    int m = kIpsMoments[0].length;
    for (const auto& c : kIpsMoments) m = std::max(m, c.length);
    return m;
}

} // namespace detail

/// Largest lag tabulated for series length `length` (-1 when none).
inline int ips_max_tabulated_lag(DeterministicSpec spec, int length) {
    const bool trend = spec == DeterministicSpec::trend_and_constant;
    int lo = -1, hi = -1;
    for (const auto& c : detail::kIpsMoments) {
        if (c.trend != (trend ? 1 : 0)) continue;
        if (c.length <= length && (lo < 0 || c.length > lo)) lo = c.length;
        if (c.length >= length && (hi < 0 || c.length < hi)) hi = c.length;
    }
    if (lo < 0 || hi < 0) return -1;
    int best = -1;
    for (int p = 0;; ++p) {
        if (!detail::find_ips_cell(trend, lo, p) || !detail::find_ips_cell(trend, hi, p)) break;
        best = p;
    }
    return best;
}

/**
 * @brief Simulated null moments of the ADF tau for a series of `length`
 * observations and `lag` augmentation lags, interpolated linearly in length.
 *
 * Throws UnsupportedSampleSize outside the tabulated range.
 */
inline TauMoments ips_moments(DeterministicSpec spec, int length, int lag) {
    if (spec == DeterministicSpec::none)
        throw DomainError("IPS moments exist only for constant or trend-and-constant specs");
    const bool trend = spec == DeterministicSpec::trend_and_constant;
    if (length < detail::ips_min_length() || length > detail::ips_max_length())
        throw UnsupportedSampleSize("IPS moments: series length " + std::to_string(length) +
                                    " outside the tabulated range [" +
                                    std::to_string(detail::ips_min_length()) + ", " +
                                    std::to_string(detail::ips_max_length()) + "]");
    if (const auto* exact = detail::find_ips_cell(trend, length, lag)) return {exact->mean, exact->variance};
    int lo = -1, hi = -1;
    for (const auto& c : detail::kIpsMoments) {
        if (c.trend != (trend ? 1 : 0) || c.lag != lag) continue;
        if (c.length < length && (lo < 0 || c.length > lo)) lo = c.length;
        if (c.length > length && (hi < 0 || c.length < hi)) hi = c.length;
    }
    const auto* a = lo >= 0 ? detail::find_ips_cell(trend, lo, lag) : nullptr;
    const auto* b = hi >= 0 ? detail::find_ips_cell(trend, hi, lag) : nullptr;
    if (!a || !b)
        throw UnsupportedSampleSize("IPS moments: no entry for length " + std::to_string(length) +
                                    " with " + std::to_string(lag) + " lags");
    const double w = static_cast<double>(length - a->length) / static_cast<double>(b->length - a->length);
    return {a->mean + w * (b->mean - a->mean), a->variance + w * (b->variance - a->variance)};
}

} // namespace pegls
