#pragma once

#include <array>
#include <cmath>
#include <limits>

#include "pegls/distributions.hpp"
#include "pegls/error.hpp"

namespace pegls {

/// Deterministic terms of a unit-root test regression.
enum class DeterministicSpec { trend_and_constant, constant_only, none };

inline const char* to_string(DeterministicSpec spec) {
    switch (spec) {
    case DeterministicSpec::trend_and_constant: return "trend_and_constant";
    case DeterministicSpec::constant_only: return "constant_only";
    case DeterministicSpec::none: return "none";
    }
    return "?";
}

/// Number of deterministic regressors (constant, trend) for `spec`.
inline int deterministic_terms(DeterministicSpec spec) {
    switch (spec) {
    case DeterministicSpec::trend_and_constant: return 2;
    case DeterministicSpec::constant_only: return 1;
    case DeterministicSpec::none: return 0;
    }
    return 0;
}

namespace detail {

// MacKinnon (1994) asymptotic response surface for a single Dickey-Fuller tau,
// one row per deterministic spec. p = Φ(polynomial(tau)); the small-p
// polynomial applies at or below tau_star, the large-p one above it.
struct MacKinnonSurface {
    double tau_min;
    double tau_star;
    double tau_max;
    std::array<double, 3> small_p; // c0 + c1·τ + c2·τ²
    std::array<double, 4> large_p; // c0 + c1·τ + c2·τ² + c3·τ³
};

inline const MacKinnonSurface& mackinnon_surface(DeterministicSpec spec) {
    static const MacKinnonSurface none{-19.04, -1.04, std::numeric_limits<double>::infinity(),
                                       {0.6344, 1.2378, 3.2496e-2},
                                       {0.4797, 9.3557e-1, -0.6999e-1, 3.3066e-2}};
    static const MacKinnonSurface constant{-18.83, -1.61, 2.74,
                                           {2.1659, 1.4412, 3.8269e-2},
                                           {1.7339, 9.3202e-1, -1.2745e-1, -1.0368e-2}};
    static const MacKinnonSurface trend{-16.18, -2.89, 0.7,
                                        {3.2512, 1.6047, 4.9588e-2},
                                        {2.5261, 6.1654e-1, -3.7956e-1, -6.0285e-2}};
    switch (spec) {
    case DeterministicSpec::none: return none;
    case DeterministicSpec::constant_only: return constant;
    case DeterministicSpec::trend_and_constant: return trend;
    }
    return constant;
}

} // namespace detail

/**
 * @brief Approximate p-value of a Dickey-Fuller tau (ADF or PP Z-tau).
 *
 * Above the surface's upper cut-off the p-value is 1. Below the lower cut-off
 * the polynomial is no longer monotone, so tau is clamped there; the result is
 * a tiny positive probability rather than an exact zero.
 */
inline double mackinnon_p(double tau, DeterministicSpec spec) {
    if (std::isnan(tau)) throw DomainError("mackinnon_p: tau is NaN");
    const auto& s = detail::mackinnon_surface(spec);
    if (tau > s.tau_max) return 1.0;
    const double t = tau < s.tau_min ? s.tau_min : tau;
    double z = 0.0;
    if (t <= s.tau_star) {
        z = s.small_p[0] + t * (s.small_p[1] + t * s.small_p[2]);
    } else {
        z = s.large_p[0] + t * (s.large_p[1] + t * (s.large_p[2] + t * s.large_p[3]));
    }
    return normal_cdf(z);
}

} // namespace pegls
