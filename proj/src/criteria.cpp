#include "dephase/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "dephase/errors.hpp"
#include "dephase/parallel.hpp"

namespace dephase {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string grid_note(double temperature, double t) {
    return "at grid point T=" + std::to_string(temperature) +
           ", t=" + std::to_string(t) + ": ";
}

// Reruns body with the grid coordinates prepended to any library error.
template <class Body>
void with_coordinates(double temperature, double t, Body&& body) {
    try {
        body();
    } catch (const inconsistency_error& e) {
        throw inconsistency_error(grid_note(temperature, t) + e.what());
    } catch (const numeric_error& e) {
        throw numeric_error(grid_note(temperature, t) + e.what(), e.achieved_error);
    } catch (const invalid_input& e) {
        throw invalid_input(grid_note(temperature, t) + e.what());
    }
}

void require_axis(const std::vector<double>& axis, const char* name) {
    if (axis.empty()) throw invalid_input(std::string(name) + " axis must be nonempty");
    for (std::size_t i = 0; i < axis.size(); ++i) {
        if (!std::isfinite(axis[i]))
            throw invalid_input(std::string(name) + " axis contains a non-finite value");
        if (i > 0 && !(axis[i] > axis[i - 1]))
            throw invalid_input(std::string(name) + " axis must be strictly increasing");
    }
}

}  // namespace

const char* to_string(RegionLabel label) {
    switch (label) {
        case RegionLabel::Separable: return "SEPARABLE";
        case RegionLabel::Entangled: return "ENTANGLED";
        case RegionLabel::Unknown: return "UNKNOWN";
    }
    return "UNKNOWN";
}

double separability_bound(const QubitBloch& state) {
    validate(state);
    const double perp2 = state.rho_perp_sq();
    if (perp2 == 0.0) return kInf;
    return 0.5 * std::log((1.0 - state.z * state.z) / perp2);
}

double entanglement_bound(const QubitBloch& state) {
    validate(state);
    const double perp2 = state.rho_perp_sq();
    if (perp2 == 0.0) return kInf;  // covers axis states and r = 0
    return std::log((state.r() - state.z * state.z) / perp2);
}

RegionLabel classify(const BathSpec& bath, double t, const QubitBloch& state,
                     const QuadratureConfig& cfg) {
    validate(bath);
    validate(state);
    // coherence-free states never entangle under pure dephasing; skip quadrature
    if (state.rho_perp_sq() == 0.0) return RegionLabel::Separable;

    const double sep_b = separability_bound(state);
    const double ent_b = entanglement_bound(state);
    const bool separable = !witness_exceeds(WitnessKind::Sep, bath, t, sep_b, cfg);
    const bool entangled = witness_exceeds(WitnessKind::Ent, bath, t, ent_b, cfg);
    if (separable && entangled)
        throw inconsistency_error(
            "separability and entanglement certificates fired together at T=" +
            std::to_string(bath.temperature) + ", t=" + std::to_string(t) +
            "; this indicates a quadrature tolerance defect");
    if (separable) return RegionLabel::Separable;
    if (entangled) return RegionLabel::Entangled;
    return RegionLabel::Unknown;
}

PhaseDiagram phase_diagram(const BathSpec& proto, const QubitBloch& state,
                           std::vector<double> temperatures, std::vector<double> times,
                           const QuadratureConfig& cfg, int threads) {
    validate(proto);
    validate(state);
    require_axis(temperatures, "temperature");
    require_axis(times, "time");
    if (temperatures.front() < kMinGridTemperature)
        throw invalid_input("grid temperatures below " +
                            std::to_string(kMinGridTemperature) + " are not supported");

    PhaseDiagram diagram;
    diagram.temperatures = std::move(temperatures);
    diagram.times = std::move(times);
    diagram.labels.resize(diagram.temperatures.size() * diagram.times.size(),
                          RegionLabel::Unknown);

    const std::size_t n_times = diagram.times.size();
    parallel_for_indexed(diagram.labels.size(), threads, [&](std::size_t idx) {
        const double temperature = diagram.temperatures[idx / n_times];
        const double t = diagram.times[idx % n_times];
        BathSpec bath = proto;
        bath.temperature = temperature;
        with_coordinates(temperature, t, [&] {
            diagram.labels[idx] = classify(bath, t, state, cfg);
        });
    });
    return diagram;
}

std::optional<double> entanglement_onset(const BathSpec& bath, const QubitBloch& state,
                                         double t_max, const QuadratureConfig& cfg) {
    validate(bath);
    validate(state);
    if (!(t_max > 0.0) || !std::isfinite(t_max))
        throw invalid_input("t_max must be positive and finite");

    const double bound = entanglement_bound(state);
    if (std::isinf(bound)) return std::nullopt;
    auto exceeds = [&](double t) {
        return witness_exceeds(WitnessKind::Ent, bath, t, bound, cfg);
    };

    // Geometric points resolve an early onset; half-period linear points keep
    // oscillatory re-entries from slipping between geometric neighbours.
    std::vector<double> grid;
    const int n_log = 512;
    const double t_lo = t_max * 1e-9;
    for (int i = 0; i < n_log; ++i)
        grid.push_back(t_lo * std::pow(1e9, static_cast<double>(i) / (n_log - 1)));
    const double dt = 0.5 * kPi / bath.omega_c;
    const std::size_t n_lin =
        std::min(static_cast<std::size_t>(std::ceil(t_max / dt)), std::size_t{20000});
    for (std::size_t i = 1; i <= n_lin; ++i)
        grid.push_back(std::min(static_cast<double>(i) * dt, t_max));
    std::sort(grid.begin(), grid.end());

    std::size_t first = grid.size();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (exceeds(grid[i])) {
            first = i;
            break;
        }
    }
    if (first == grid.size()) return std::nullopt;

    double hi = grid[first];
    double lo;
    if (first > 0) {
        lo = grid[first - 1];
    } else {
        double cand = 0.5 * hi;
        int halvings = 0;
        while (exceeds(cand) && ++halvings < 200) {
            hi = cand;
            cand *= 0.5;
        }
        if (halvings >= 200) return hi;  // onset below any resolvable time
        lo = cand;
    }
    while (hi - lo > 1e-4 * hi) {
        const double mid = 0.5 * (lo + hi);
        (exceeds(mid) ? hi : lo) = mid;
    }
    return hi;
}

double separable_fraction(const BathSpec& bath, const QuadratureConfig& cfg) {
    validate(bath);
    const double tau = decoherence_time(bath, cfg);
    // Beyond 400 nats the fraction e^{-2S} underflows to an exact 0, and the
    // witness itself may not be representable; decide by partial sums instead.
    if (witness_exceeds(WitnessKind::Sep, bath, tau, 400.0, cfg)) return 0.0;
    return std::exp(-2.0 * witness_sep(bath, tau, cfg));
}

BoundaryCurve separable_cut(const BathSpec& bath, const std::vector<double>& z_axis,
                            const QuadratureConfig& cfg) {
    validate(bath);
    for (double z : z_axis)
        if (!(std::abs(z) < 1.0))
            throw invalid_input("cut requires |z| < 1");

    const double tau = decoherence_time(bath, cfg);
    const double shrink = witness_exceeds(WitnessKind::Sep, bath, tau, 400.0, cfg)
                              ? 0.0
                              : std::exp(-2.0 * witness_sep(bath, tau, cfg));
    BoundaryCurve curve;
    curve.reserve(z_axis.size());
    for (double z : z_axis)
        curve.push_back({z, std::sqrt((1.0 - z * z) * shrink)});
    return curve;
}

BoundaryCurve entangled_cut(const BathSpec& bath, const std::vector<double>& z_axis,
                            const QuadratureConfig& cfg) {
    validate(bath);
    for (double z : z_axis)
        if (!(std::abs(z) < 1.0))
            throw invalid_input("cut requires |z| < 1");

    const double tau = decoherence_time(bath, cfg);
    // Boundaries below rho_perp ~ e^{-750} are not representable; report the
    // whole cut as absent rather than underflow noise.
    if (witness_exceeds(WitnessKind::Ent, bath, tau, 1500.0, cfg)) {
        BoundaryCurve curve;
        for (double z : z_axis) curve.push_back({z, std::nullopt});
        return curve;
    }
    const double witness = witness_ent(bath, tau, cfg);

    BoundaryCurve curve;
    curve.reserve(z_axis.size());
    for (double z : z_axis) {
        const double z2 = z * z;
        const double u_hi = 1.0 - z2;  // rho_perp^2 on the sphere surface
        // log[(r - z^2)/u] - witness is monotone decreasing in u = rho_perp^2;
        // bisect in v = log(u)
        auto g = [z2, witness](double v) {
            const double u = std::exp(v);
            return std::log((std::sqrt(z2 + u) - z2) / u) - witness;
        };
        double v_hi = std::log(u_hi);
        if (g(v_hi) >= 0.0) {
            // witness == 0 edge: the boundary sits on the sphere itself
            curve.push_back({z, std::sqrt(u_hi)});
            continue;
        }
        double v_lo = std::log(1e-308);
        if (g(v_lo) <= 0.0) {
            curve.push_back({z, std::nullopt});
            continue;
        }
        for (int iter = 0; iter < 120; ++iter) {
            const double mid = 0.5 * (v_lo + v_hi);
            (g(mid) > 0.0 ? v_lo : v_hi) = mid;
        }
        curve.push_back({z, std::exp(0.5 * v_hi)});
    }
    return curve;
}

AlternationResult count_alternations(const BathSpec& bath, const QubitBloch& state,
                                     const std::vector<double>& t_axis,
                                     const QuadratureConfig& cfg, int threads) {
    validate(bath);
    validate(state);
    require_axis(t_axis, "time");

    AlternationResult result;
    result.labels.resize(t_axis.size(), RegionLabel::Unknown);
    parallel_for_indexed(t_axis.size(), threads, [&](std::size_t i) {
        with_coordinates(bath.temperature, t_axis[i], [&] {
            result.labels[i] = classify(bath, t_axis[i], state, cfg);
        });
    });

    bool seen = false;
    RegionLabel prev = RegionLabel::Unknown;
    for (RegionLabel label : result.labels) {
        if (label == RegionLabel::Unknown) continue;  // gaps do not count
        if (seen && label != prev) ++result.transitions;
        prev = label;
        seen = true;
    }
    return result;
}

}  // namespace dephase
