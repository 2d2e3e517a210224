#include "dephase/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "dephase/errors.hpp"
#include "dephase/rootfind.hpp"

namespace dephase {
namespace {

// exp(omega/T) overflows just above 709; refuse a little earlier so every
// quadrature node stays finite.
constexpr double kMaxThermalArg = 700.0;

void require_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t))
        throw invalid_input("time must be nonnegative and finite");
}

// (1 - cos(wt))/w^2 written as 2 sin^2(wt/2)/w^2: exactly nonnegative and free
// of cancellation at small wt.
double osc_weight(double w, double t) {
    if (w == 0.0) return 0.5 * t * t;
    const double s = std::sin(0.5 * w * t);
    return 2.0 * (s / w) * (s / w);
}

void check_thermal_range(const BathSpec& bath, const char* what) {
    if (bath.omega_c / bath.temperature > kMaxThermalArg)
        throw numeric_error(std::string(what) +
                            " overflows double precision for omega_c/T > 700; "
                            "use witness_exceeds in this regime");
}

template <class F>
double kernel_integral(const BathSpec& bath, double t, const QuadratureConfig& cfg,
                       F&& f) {
    if (t == 0.0) return 0.0;
    const std::size_t panels = oscillation_panels(0.0, bath.omega_c, t);
    return integrate(f, 0.0, bath.omega_c, cfg, panels).value;
}

}  // namespace

double decoherence_rate(const BathSpec& bath, double t, const QuadratureConfig& cfg) {
    validate(bath);
    require_time(t);
    const double kappa = bath.kappa;
    const double T = bath.temperature;
    auto f = [kappa, T, t](double w) {
        if (w == 0.0) return 8.0 * kappa * T * t;
        return 4.0 * kappa * std::sin(w * t) / std::tanh(0.5 * w / T);
    };
    return kernel_integral(bath, t, cfg, f);
}

double decoherence_exponent(const BathSpec& bath, double t, const QuadratureConfig& cfg) {
    validate(bath);
    require_time(t);
    const double kappa = bath.kappa;
    const double T = bath.temperature;
    auto f = [kappa, T, t](double w) {
        if (w == 0.0) return 4.0 * kappa * T * t * t;
        return 4.0 * kappa * w * osc_weight(w, t) / std::tanh(0.5 * w / T);
    };
    return kernel_integral(bath, t, cfg, f);
}

std::complex<double> decoherence_factor(const BathSpec& bath, double omega_q,
                                        double t, const QuadratureConfig& cfg) {
    return std::polar(std::exp(-decoherence_exponent(bath, t, cfg)), -omega_q * t);
}

ReducedState reduced_state(const QubitBloch& initial, const BathSpec& bath,
                           double omega_q, double t, const QuadratureConfig& cfg) {
    validate(initial);
    ReducedState s = reduced_state_from_bloch(initial);
    if (s.rho01 != std::complex<double>(0.0, 0.0))
        s.rho01 *= decoherence_factor(bath, omega_q, t, cfg);
    return s;
}

double coeff_diag(const BathSpec& bath, double t, const QuadratureConfig& cfg) {
    validate(bath);
    require_time(t);
    check_thermal_range(bath, "diagonal weight exponent");
    const double kappa = bath.kappa;
    const double T = bath.temperature;
    // 1/n_bar = expm1(w/T)
    auto f = [kappa, T, t](double w) {
        return 2.0 * kappa * w * std::expm1(w / T) * osc_weight(w, t);
    };
    return kernel_integral(bath, t, cfg, f);
}

double coeff_offdiag(const BathSpec& bath, double t, const QuadratureConfig& cfg) {
    validate(bath);
    require_time(t);
    check_thermal_range(bath, "off-diagonal weight exponent");
    const double kappa = bath.kappa;
    const double T = bath.temperature;
    // (2 n_bar + 1)/n_bar = expm1(w/T) + 2
    auto f = [kappa, T, t](double w) {
        return 2.0 * kappa * w * (std::expm1(w / T) + 2.0) * osc_weight(w, t);
    };
    return kernel_integral(bath, t, cfg, f);
}

double witness_sep(const BathSpec& bath, double t, const QuadratureConfig& cfg) {
    validate(bath);
    require_time(t);
    check_thermal_range(bath, "separability witness");
    const double kappa = bath.kappa;
    const double T = bath.temperature;
    auto f = [kappa, T, t](double w) {
        return 4.0 * kappa * w * std::exp(w / T) * osc_weight(w, t);
    };
    return kernel_integral(bath, t, cfg, f);
}

double witness_sep_dual(const BathSpec& bath, double t, const QuadratureConfig& cfg) {
    validate(bath);
    require_time(t);
    const double kappa = bath.kappa;
    const double T = bath.temperature;
    auto f = [kappa, T, t](double w) {
        return 4.0 * kappa * w * std::exp(-w / T) * osc_weight(w, t);
    };
    return kernel_integral(bath, t, cfg, f);
}

double witness_ent(const BathSpec& bath, double t, const QuadratureConfig& cfg) {
    validate(bath);
    require_time(t);
    check_thermal_range(bath, "entanglement witness");
    const double kappa = bath.kappa;
    const double T = bath.temperature;
    auto f = [kappa, T, t](double w) {
        return 8.0 * kappa * w * std::sinh(w / T) * osc_weight(w, t);
    };
    return kernel_integral(bath, t, cfg, f);
}

KernelValues kernel_values(const BathSpec& bath, double t, const QuadratureConfig& cfg) {
    // every field gets its own quadrature so the S = A + B and E = S - Sbar
    // identities stay meaningful cross-checks
    KernelValues v;
    v.coeff_diag = coeff_diag(bath, t, cfg);
    v.coeff_offdiag = coeff_offdiag(bath, t, cfg);
    v.witness_sep = witness_sep(bath, t, cfg);
    v.witness_sep_dual = witness_sep_dual(bath, t, cfg);
    v.witness_ent = witness_ent(bath, t, cfg);
    v.rate = decoherence_rate(bath, t, cfg);
    v.exponent = decoherence_exponent(bath, t, cfg);
    return v;
}

bool witness_exceeds(WitnessKind kind, const BathSpec& bath, double t, double bound,
                     const QuadratureConfig& cfg) {
    validate(bath);
    require_time(t);
    if (std::isnan(bound)) throw invalid_input("witness bound must not be NaN");
    if (std::isinf(bound)) return bound < 0.0;
    if (t == 0.0) return 0.0 > bound;
    if (bound < 0.0) return true;  // the integral is strictly positive for t > 0

    const double kappa = bath.kappa;
    const double T = bath.temperature;
    const double wc = bath.omega_c;
    const bool ent = kind == WitnessKind::Ent;
    auto f = [kappa, T, t, ent](double w) {
        const double base = kappa * w * osc_weight(w, t);
        if (ent) return 8.0 * base * std::sinh(w / T);
        return 4.0 * base * std::exp(w / T);
    };

    // Panels fine enough for both the oscillation and the exponential weight;
    // highest frequencies first, since the thermal weight peaks at the cutoff.
    const std::size_t n = std::max({oscillation_panels(0.0, wc, t),
                                    static_cast<std::size_t>(std::ceil(wc / T / 20.0)),
                                    std::size_t{8}});
    const double width = wc / static_cast<double>(n);

    QuadratureConfig panel_cfg = cfg;
    panel_cfg.max_subdivisions = std::max(cfg.max_subdivisions / 4, 25);
    if (bound > 0.0)
        panel_cfg.abs_tol =
            std::max(cfg.abs_tol, 1e-3 * bound / static_cast<double>(n));

    quad_detail::KahanSum total;
    quad_detail::KahanSum err;
    for (std::size_t i = n; i-- > 0;) {
        const double lo = width * static_cast<double>(i);
        const double hi = (i + 1 == n) ? wc : lo + width;
        const auto raw = quad_detail::integrate_raw(f, lo, hi, panel_cfg, 1);
        // A non-finite node means the (nonnegative) panel alone dwarfs any
        // representable bound, so the comparison is already decided.
        if (raw.status == quad_detail::Status::NotFinite) return true;
        total.add(raw.value);
        err.add(raw.error);
        if (total.sum - err.sum > bound) return true;
    }
    return total.sum > bound;
}

double decoherence_time(const BathSpec& bath, const QuadratureConfig& cfg,
                        double t_max_bracket) {
    validate(bath);
    if (std::isnan(t_max_bracket) || t_max_bracket < 0.0)
        throw invalid_input("t_max_bracket must be nonnegative");
    const double t_cap = t_max_bracket > 0.0 ? t_max_bracket : 1e8 / bath.omega_c;

    auto f = [&](double t) { return decoherence_exponent(bath, t, cfg) - 1.0; };

    double lo = 0.0;
    double f_lo = -1.0;
    double hi = std::min(1.0 / bath.omega_c, t_cap);
    double f_hi = f(hi);
    while (f_hi < 0.0) {
        if (hi >= t_cap)
            throw numeric_error("decoherence exponent stays below 1 up to t = " +
                                std::to_string(t_cap) +
                                "; no decoherence time for these parameters");
        lo = hi;
        f_lo = f_hi;
        hi = std::min(2.0 * hi, t_cap);
        f_hi = f(hi);
    }
    // |f| <= 5e-7 at the accepted point keeps the exponent within 1e-6 of 1
    return brent_root(f, lo, hi, f_lo, f_hi, 1e-12 * hi, 5e-7);
}

}  // namespace dephase
