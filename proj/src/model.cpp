#include "dephase/model.hpp"

#include <cmath>
#include <string>

#include "dephase/errors.hpp"

namespace dephase {

void validate(const BathSpec& bath) {
    if (!(bath.kappa > 0.0) || !std::isfinite(bath.kappa))
        throw invalid_input("bath coupling must be positive and finite, got " +
                            std::to_string(bath.kappa));
    if (!(bath.omega_c > 0.0) || !std::isfinite(bath.omega_c))
        throw invalid_input("bath cutoff must be positive and finite, got " +
                            std::to_string(bath.omega_c));
    if (!(bath.temperature > 0.0) || !std::isfinite(bath.temperature))
        throw invalid_input("bath temperature must be positive and finite, got " +
                            std::to_string(bath.temperature));
}

double spectral_density(const BathSpec& bath, double omega) {
    if (omega < 0.0) throw invalid_input("spectral density argument must be nonnegative");
    if (omega >= bath.omega_c) return 0.0;
    return bath.kappa * omega;
}

double thermal_occupation(double omega, double temperature) {
    if (!(temperature > 0.0)) throw invalid_input("temperature must be positive");
    if (!(omega > 0.0)) throw invalid_input("mode frequency must be positive");
    // 1/(e^{w/T} - 1) via expm1, exact for w/T small.
    return 1.0 / std::expm1(omega / temperature);
}

QubitBloch qubit_from_polar(double r, double z, double phase) {
    if (!(r >= 0.0) || r > 1.0)
        throw invalid_input("Bloch radius must lie in [0, 1], got " + std::to_string(r));
    QubitBloch q;
    const double perp_sq = r * r - z * z;
    if (perp_sq < 0.0) throw invalid_input("|z| exceeds Bloch radius");
    const double perp = std::sqrt(perp_sq);
    q.x = perp * std::cos(phase);
    q.y = perp * std::sin(phase);
    q.z = z;
    validate(q);
    return q;
}

QubitBloch qubit_from_cartesian(double x, double y, double z) {
    QubitBloch q{x, y, z};
    validate(q);
    return q;
}

void validate(const QubitBloch& q) {
    if (!std::isfinite(q.x) || !std::isfinite(q.y) || !std::isfinite(q.z))
        throw invalid_input("Bloch components must be finite");
    const double r2 = q.x * q.x + q.y * q.y + q.z * q.z;
    // Small headroom for round-off when callers build the vector from polar data.
    if (r2 > 1.0 + 1e-12) throw invalid_input("Bloch vector lies outside the unit ball");
}

ReducedState reduced_state_from_bloch(const QubitBloch& q) {
    ReducedState s;
    s.rho00 = 0.5 * (1.0 + q.z);
    s.rho11 = 0.5 * (1.0 - q.z);
    s.rho01 = 0.5 * std::complex<double>(q.x, -q.y);
    return s;
}

}  // namespace dephase
