#pragma once

#include <complex>

#include "dephase/model.hpp"
#include "dephase/quadrature.hpp"

namespace dephase {

// Frequency-integral kernels of the exact dephasing dynamics, all evaluated
// over the bath support [0, omega_c]. Every double time integral has been
// reduced to a single frequency integral via
//   int_0^t cos(w s) ds            = sin(w t)/w
//   int_0^t ds int_0^s dv cos(w v) = (1 - cos(w t))/w^2.

struct KernelValues {
    double coeff_diag{0.0};        // decay exponent of the diagonal weight factors
    double coeff_offdiag{0.0};     // growth exponent of the off-diagonal weight factors
    double witness_sep{0.0};       // separability witness integral (sum of the two above)
    double witness_sep_dual{0.0};  // companion with the inverted thermal weight
    double witness_ent{0.0};       // entanglement witness integral
    double rate{0.0};              // instantaneous dephasing rate
    double exponent{0.0};          // accumulated dephasing exponent
};

// Instantaneous dephasing rate; approaches 4*pi*kappa*T for omega_c*t >> 1
// in the high-temperature regime.
double decoherence_rate(const BathSpec& bath, double t,
                        const QuadratureConfig& cfg = {});

// Time integral of the rate; nonnegative and vanishing at t = 0.
double decoherence_exponent(const BathSpec& bath, double t,
                            const QuadratureConfig& cfg = {});

// Factor multiplying the initial coherence: exp(-i*omega_q*t - exponent).
std::complex<double> decoherence_factor(const BathSpec& bath, double omega_q,
                                        double t, const QuadratureConfig& cfg = {});

// Exact reduced qubit state at time t; populations stay frozen.
ReducedState reduced_state(const QubitBloch& initial, const BathSpec& bath,
                           double omega_q, double t,
                           const QuadratureConfig& cfg = {});

// The individual kernels. All are nonnegative, vanish at t = 0 and increase
// with temperature at fixed t. Functions carrying exp(+omega/T)-type weights
// refuse omega_c/T > 700 (use witness_exceeds for that regime instead).
double coeff_diag(const BathSpec& bath, double t, const QuadratureConfig& cfg = {});
double coeff_offdiag(const BathSpec& bath, double t, const QuadratureConfig& cfg = {});
double witness_sep(const BathSpec& bath, double t, const QuadratureConfig& cfg = {});
double witness_sep_dual(const BathSpec& bath, double t, const QuadratureConfig& cfg = {});
double witness_ent(const BathSpec& bath, double t, const QuadratureConfig& cfg = {});

KernelValues kernel_values(const BathSpec& bath, double t,
                           const QuadratureConfig& cfg = {});

enum class WitnessKind { Sep, Ent };

// Decides whether the (nonnegative) witness integral exceeds `bound` without
// ever holding the full value: panels are accumulated from the top of the
// band downward and the comparison short-circuits, so the answer stays valid
// even when the integral itself would overflow.
bool witness_exceeds(WitnessKind kind, const BathSpec& bath, double t,
                     double bound, const QuadratureConfig& cfg = {});

// First time the accumulated exponent reaches 1, found by geometric bracket
// growth from 1/omega_c followed by Brent refinement. Throws numeric_error
// when the exponent stays below 1 up to t_max_bracket (default 1e8/omega_c).
double decoherence_time(const BathSpec& bath, const QuadratureConfig& cfg = {},
                        double t_max_bracket = 0.0);

}  // namespace dephase
