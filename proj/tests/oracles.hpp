#pragma once

#include <cmath>
#include <cstddef>

// Brute-force fixed-grid oracles. Deliberately independent of the library:
// plain trapezoid sums over the raw integrand formulas, no shared helpers.
namespace oracle {

template <class F>
double trapezoid(F&& f, double a, double b, std::size_t n) {
    const double h = (b - a) / static_cast<double>(n);
    double sum = 0.5 * (f(a) + f(b));
    for (std::size_t i = 1; i < n; ++i) sum += f(a + h * static_cast<double>(i));
    return sum * h;
}

inline double cos_deficit(double w, double t) {
    if (w == 0.0) return 0.5 * t * t;
    return (1.0 - std::cos(w * t)) / (w * w);
}

inline double rate_integrand(double kappa, double T, double t, double w) {
    if (w == 0.0) return 8.0 * kappa * T * t;
    return 4.0 * kappa * std::sin(w * t) / std::tanh(0.5 * w / T);
}

inline double exponent_integrand(double kappa, double T, double t, double w) {
    if (w == 0.0) return 4.0 * kappa * T * t * t;
    return 4.0 * kappa * w * cos_deficit(w, t) / std::tanh(0.5 * w / T);
}

inline double diag_integrand(double kappa, double T, double t, double w) {
    return 2.0 * kappa * w * (std::exp(w / T) - 1.0) * cos_deficit(w, t);
}

inline double offdiag_integrand(double kappa, double T, double t, double w) {
    return 2.0 * kappa * w * (std::exp(w / T) + 1.0) * cos_deficit(w, t);
}

inline double sep_integrand(double kappa, double T, double t, double w) {
    return 4.0 * kappa * w * std::exp(w / T) * cos_deficit(w, t);
}

inline double sep_dual_integrand(double kappa, double T, double t, double w) {
    return 4.0 * kappa * w * std::exp(-w / T) * cos_deficit(w, t);
}

inline double ent_integrand(double kappa, double T, double t, double w) {
    return 8.0 * kappa * w * std::sinh(w / T) * cos_deficit(w, t);
}

}  // namespace oracle
