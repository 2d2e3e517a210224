#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <vector>

#include "dephase/errors.hpp"

namespace dephase {

struct QuadratureConfig {
    double rel_tol{1e-8};
    double abs_tol{1e-12};
    int max_subdivisions{200};
};

struct QuadratureResult {
    double value{0.0};
    double error{0.0};       // estimated absolute error
    std::size_t evaluations{0};
};

namespace quad_detail {

// 15-point Kronrod nodes on [0,1] side of the rule; the 7 Gauss nodes are the
// even-indexed entries. Weights from the usual double-precision tabulation.
inline constexpr double kNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
inline constexpr double kKronrodW[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
inline constexpr double kGaussW[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
    double a{0.0};
    double b{0.0};
    double value{0.0};
    double error{0.0};
};

// One G7-K15 evaluation with the QUADPACK-style error estimate.
template <class F>
Panel gk15(F&& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fv[15];
    const double fc = f(center);
    fv[14] = fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kNodes[i];
        fv[2 * i] = f(center - dx);
        fv[2 * i + 1] = f(center + dx);
    }

    double resk = kKronrodW[7] * fc;
    double resabs = std::abs(resk);
    for (int i = 0; i < 7; ++i) {
        const double sum = fv[2 * i] + fv[2 * i + 1];
        resk += kKronrodW[i] * sum;
        resabs += kKronrodW[i] * (std::abs(fv[2 * i]) + std::abs(fv[2 * i + 1]));
    }
    double resg = kGaussW[3] * fc;
    for (int i = 0; i < 3; ++i)
        resg += kGaussW[i] * (fv[2 * (2 * i + 1)] + fv[2 * (2 * i + 1) + 1]);

    const double mean = 0.5 * resk;
    double resasc = kKronrodW[7] * std::abs(fc - mean);
    for (int i = 0; i < 7; ++i)
        resasc += kKronrodW[i] *
                  (std::abs(fv[2 * i] - mean) + std::abs(fv[2 * i + 1] - mean));

    Panel p;
    p.a = a;
    p.b = b;
    p.value = resk * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    const double tiny = std::numeric_limits<double>::min();
    if (resabs > tiny / (50.0 * eps)) err = std::max(eps * 50.0 * resabs, err);
    p.error = err;
    return p;
}

struct KahanSum {
    double sum{0.0};
    double carry{0.0};
    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

enum class Status { Ok, NoConvergence, NotFinite };

struct RawResult {
    double value{0.0};
    double error{0.0};
    std::size_t evaluations{0};
    Status status{Status::Ok};
};

// Adaptive integration over [a,b] starting from `initial` equal panels.
// The initial pass is streamed so a fine oscillation split does not have to be
// stored; only panels whose error stays relevant are kept for refinement.
template <class F>
RawResult integrate_raw(F&& f, double a, double b, const QuadratureConfig& cfg,
                        std::size_t initial) {
    RawResult out;
    if (!(b > a)) {
        if (a == b) return out;
        out.status = Status::NotFinite;
        return out;
    }
    initial = std::max<std::size_t>(initial, 1);

    KahanSum converged_value;   // panels considered done
    KahanSum converged_error;
    std::vector<Panel> active;  // candidates for refinement, heap by error
    const auto by_error = [](const Panel& lhs, const Panel& rhs) {
        return lhs.error < rhs.error;
    };

    const double keep_floor = cfg.abs_tol / (16.0 * static_cast<double>(initial));
    const std::size_t max_active = std::size_t{1} << 20;
    const double width = (b - a) / static_cast<double>(initial);
    for (std::size_t i = 0; i < initial; ++i) {
        const double lo = a + width * static_cast<double>(i);
        const double hi = (i + 1 == initial) ? b : lo + width;
        Panel p = gk15(f, lo, hi);
        out.evaluations += 15;
        if (!std::isfinite(p.value)) {
            out.status = Status::NotFinite;
            return out;
        }
        if (p.error <= keep_floor || active.size() >= max_active) {
            converged_value.add(p.value);
            converged_error.add(p.error);
        } else {
            active.push_back(p);
            std::push_heap(active.begin(), active.end(), by_error);
        }
    }

    double active_value = 0.0;
    double active_error = 0.0;
    auto recompute_active = [&] {
        active_value = 0.0;
        active_error = 0.0;
        for (const Panel& p : active) {
            active_value += p.value;
            active_error += p.error;
        }
    };
    recompute_active();

    int splits = 0;
    while (true) {
        const double total = converged_value.sum + active_value;
        const double err = converged_error.sum + active_error;
        const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
        out.value = total;
        out.error = err;
        if (err <= tol) return out;
        if (splits >= cfg.max_subdivisions || active.empty()) {
            out.status = Status::NoConvergence;
            return out;
        }
        std::pop_heap(active.begin(), active.end(), by_error);
        const Panel worst = active.back();
        active.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval at machine resolution; give up on it
            converged_value.add(worst.value);
            converged_error.add(worst.error);
            recompute_active();
            continue;
        }
        Panel left = gk15(f, worst.a, mid);
        Panel right = gk15(f, mid, worst.b);
        out.evaluations += 30;
        ++splits;
        if (!std::isfinite(left.value) || !std::isfinite(right.value)) {
            out.status = Status::NotFinite;
            return out;
        }
        active.push_back(left);
        std::push_heap(active.begin(), active.end(), by_error);
        active.push_back(right);
        std::push_heap(active.begin(), active.end(), by_error);
        recompute_active();
    }
}

}  // namespace quad_detail

// Number of equal initial panels needed so each one spans at most half an
// oscillation of cos(phase_rate * x) once the phase across [a,b] gets large.
inline std::size_t oscillation_panels(double a, double b, double phase_rate) {
    const double span = std::abs(phase_rate) * (b - a);
    if (!(span > 50.0)) return 1;
    return static_cast<std::size_t>(std::ceil(span / 3.141592653589793));
}

// Adaptive G7-K15 quadrature; throws numeric_error when the tolerance cannot
// be met (carrying the achieved error) or when the integrand is not finite.
template <class F>
QuadratureResult integrate(F&& f, double a, double b,
                           const QuadratureConfig& cfg = {},
                           std::size_t initial_panels = 1) {
    if (!(b >= a)) throw invalid_input("integration bounds reversed");
    quad_detail::RawResult raw =
        quad_detail::integrate_raw(f, a, b, cfg, initial_panels);
    if (raw.status == quad_detail::Status::NotFinite)
        throw numeric_error("integrand evaluated to a non-finite value");
    if (raw.status == quad_detail::Status::NoConvergence) {
        char msg[128];
        std::snprintf(msg, sizeof(msg),
                      "quadrature did not converge: achieved error %.3g over [%g, %g]",
                      raw.error, a, b);
        throw numeric_error(msg, raw.error);
    }
    return QuadratureResult{raw.value, raw.error, raw.evaluations};
}

}  // namespace dephase
