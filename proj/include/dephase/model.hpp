#pragma once

#include <cmath>
#include <complex>

#include "dephase/errors.hpp"

// Conventions used throughout: hbar = k_B = 1, the bath cutoff omega_c sets the
// frequency unit, times are measured in 1/omega_c and temperatures in omega_c.

namespace dephase {

enum class SpectralDensityKind {
    OhmicSharpCutoff,  // kappa * omega below the cutoff, zero at and above it
};

struct BathSpec {
    double kappa{1e-3};        // dimensionless coupling strength
    double omega_c{1.0};       // cutoff frequency
    double temperature{1.0};   // T > 0; T = 0 is rejected
    SpectralDensityKind kind{SpectralDensityKind::OhmicSharpCutoff};
};

void validate(const BathSpec& bath);

// J(omega); zero at and above the cutoff, throws for omega < 0.
double spectral_density(const BathSpec& bath, double omega);

// Bose-Einstein occupation 1/(exp(omega/T) - 1). Underflows gracefully to 0
// deep in the quantum regime. Requires omega > 0 and T > 0.
double thermal_occupation(double omega, double temperature);

struct QubitBloch {
    double x{0.0};
    double y{0.0};
    double z{0.0};

    double r() const { return std::sqrt(x * x + y * y + z * z); }
    double rho_perp_sq() const { return x * x + y * y; }
};

// Builds a Bloch vector from radius, z component and azimuth phi.
QubitBloch qubit_from_polar(double r, double z, double phi);
QubitBloch qubit_from_cartesian(double x, double y, double z);

// Throws invalid_input unless the vector lies in the closed unit ball.
void validate(const QubitBloch& state);

// Reduced qubit density matrix entries; populations are real by construction.
struct ReducedState {
    double rho00{0.0};
    double rho11{0.0};
    std::complex<double> rho01{0.0, 0.0};
};

ReducedState reduced_state_from_bloch(const QubitBloch& state);

}  // namespace dephase
