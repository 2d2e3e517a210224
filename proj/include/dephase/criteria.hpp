#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dephase/kernels.hpp"

namespace dephase {

// Certified classification of the joint system-bath state during dephasing.
// Separability is certified while the separability witness stays at or below
// its state-dependent bound; entanglement is certified once the entanglement
// witness strictly exceeds its bound. In between neither test is conclusive.

enum class RegionLabel { Separable, Entangled, Unknown };

const char* to_string(RegionLabel label);

// Threshold of the separability test, 0.5*log[(1-z^2)/(x^2+y^2)].
// Infinite for states on the z axis (those stay separable forever).
double separability_bound(const QubitBloch& state);

// Threshold of the entanglement test, log[(r-z^2)/(x^2+y^2)].
// Infinite for axis states and the maximally mixed state.
double entanglement_bound(const QubitBloch& state);

// Runs both tests (separability first). Throws inconsistency_error if both
// fire, which is impossible in exact arithmetic and signals a numeric defect.
RegionLabel classify(const BathSpec& bath, double t, const QubitBloch& state,
                     const QuadratureConfig& cfg = {});

struct PhaseDiagram {
    std::vector<double> temperatures;
    std::vector<double> times;
    std::vector<RegionLabel> labels;  // row-major: temperatures x times

    RegionLabel at(std::size_t i_temp, std::size_t j_time) const {
        return labels[i_temp * times.size() + j_time];
    }
};

// Classifies every grid point; labels are assembled by index so the result is
// independent of the thread count. Failures carry the grid coordinates.
PhaseDiagram phase_diagram(const BathSpec& proto, const QubitBloch& state,
                           std::vector<double> temperatures,
                           std::vector<double> times,
                           const QuadratureConfig& cfg = {}, int threads = 0);

// First t in (0, t_max] at which the entanglement test fires, located by a
// scan plus bisection to 1e-4 relative tolerance. Windows narrower than the
// scan spacing (half an oscillation period) can be missed by construction.
std::optional<double> entanglement_onset(const BathSpec& bath,
                                         const QubitBloch& state, double t_max,
                                         const QuadratureConfig& cfg = {});

// Fraction of the Bloch ball still certified separable at the decoherence
// time: the ball integral collapses to exp(-2 * witness_sep(T, tau_dec)).
double separable_fraction(const BathSpec& bath, const QuadratureConfig& cfg = {});

struct BoundaryPoint {
    double z{0.0};
    std::optional<double> rho_perp;  // absent where no boundary exists
};
using BoundaryCurve = std::vector<BoundaryPoint>;

// Cross-section of the certified-separable region at t = tau_dec(T):
// rho_perp(z) = sqrt((1-z^2) * exp(-2 * witness_sep)). Requires |z| < 1.
BoundaryCurve separable_cut(const BathSpec& bath, const std::vector<double>& z_axis,
                            const QuadratureConfig& cfg = {});

// Boundary above which states are certified to entangle before tau_dec(T):
// solves witness_ent(tau_dec) = log[(r - z^2)/rho_perp^2] for rho_perp at
// each z; the right side decreases monotonically in rho_perp so the solution
// is unique. Points are absent where the boundary falls below the square root
// of the smallest positive double.
BoundaryCurve entangled_cut(const BathSpec& bath, const std::vector<double>& z_axis,
                            const QuadratureConfig& cfg = {});

struct AlternationResult {
    int transitions{0};
    std::vector<RegionLabel> labels;
};

// Labels every time on the axis and counts Separable <-> Entangled switches
// after dropping Unknown gaps (gaps are reported but do not count).
AlternationResult count_alternations(const BathSpec& bath, const QubitBloch& state,
                                     const std::vector<double>& t_axis,
                                     const QuadratureConfig& cfg = {},
                                     int threads = 0);

// Smallest temperature accepted on scan grids.
inline constexpr double kMinGridTemperature = 1e-3;

}  // namespace dephase
