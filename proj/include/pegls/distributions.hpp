#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "pegls/error.hpp"

namespace pegls {

namespace detail {

inline constexpr int kMaxSpecialIterations = 10000;
inline constexpr double kSpecialEps = 1e-16;
inline constexpr double kTiny = 1e-300;

// Series expansion of P(a, x); converges quickly for x < a + 1.
inline double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < kMaxSpecialIterations; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kSpecialEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x) (modified Lentz); converges for x >= a + 1.
inline double gamma_q_continued_fraction(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxSpecialIterations; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kSpecialEps) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

// Continued fraction for the incomplete beta function (modified Lentz).
inline double beta_continued_fraction(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m < kMaxSpecialIterations; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kSpecialEps) break;
    }
    return h;
}

inline void require_dof(double dof, const char* what) {
    if (!(dof >= 1.0)) throw DomainError(std::string(what) + ": degrees of freedom must be >= 1");
}

inline void require_nonnegative(double x, const char* what) {
    if (!(x >= 0.0)) throw DomainError(std::string(what) + ": argument must be >= 0");
}

} // namespace detail

/// Regularized upper incomplete gamma Q(a, x) = Γ(a, x) / Γ(a).
inline double regularized_gamma_q(double a, double x) {
    if (!(a > 0.0)) throw DomainError("regularized_gamma_q: a must be > 0");
    detail::require_nonnegative(x, "regularized_gamma_q");
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < a + 1.0) return 1.0 - detail::gamma_p_series(a, x);
    return detail::gamma_q_continued_fraction(a, x);
}

/// Regularized incomplete beta I_x(a, b).
inline double regularized_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("regularized_beta: a and b must be > 0");
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("regularized_beta: x must lie in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double front = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                                  a * std::log(x) + b * std::log1p(-x));
    if (x < (a + 1.0) / (a + b + 2.0)) return front * detail::beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * detail::beta_continued_fraction(b, a, 1.0 - x) / b;
}

/// P(χ²_dof > x).
inline double chi_sq_upper_tail(double x, double dof) {
    detail::require_dof(dof, "chi_sq_upper_tail");
    detail::require_nonnegative(x, "chi_sq_upper_tail");
    return regularized_gamma_q(0.5 * dof, 0.5 * x);
}

/// P(F_{d1,d2} > x).
inline double f_upper_tail(double x, double d1, double d2) {
    detail::require_dof(d1, "f_upper_tail");
    detail::require_dof(d2, "f_upper_tail");
    detail::require_nonnegative(x, "f_upper_tail");
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    return regularized_beta(0.5 * d2, 0.5 * d1, d2 / (d2 + d1 * x));
}

/// 2·P(T_dof > |t|).
inline double t_two_tailed_prob(double t, double dof) {
    detail::require_dof(dof, "t_two_tailed_prob");
    if (std::isnan(t)) throw DomainError("t_two_tailed_prob: t is NaN");
    if (std::isinf(t)) return 0.0;
    if (t == 0.0) return 1.0;
    return regularized_beta(0.5 * dof, 0.5, dof / (dof + t * t));
}

/// Standard normal CDF Φ(z).
inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

/// 2·(1 − Φ(|z|)).
inline double normal_two_sided_prob(double z) { return std::erfc(std::fabs(z) / std::sqrt(2.0)); }

} // namespace pegls
