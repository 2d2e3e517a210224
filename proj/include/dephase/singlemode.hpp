#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "dephase/kernels.hpp"
#include "dephase/model.hpp"

namespace dephase {

// Brute-force cross-check in a single-mode bath: the joint qubit+mode state
// is evolved exactly in a truncated Fock space and tested for entanglement
// via the partial transpose, against the closed-form witness predictions.

struct ModeSpec {
    double omega{1.0};        // mode frequency
    double coupling{0.2};     // dephasing coupling strength
    double temperature{1.0};  // T > 0
    int n_levels{0};          // 0: choose automatically from the tail bound
};

void validate(const ModeSpec& mode);

// Smallest truncation keeping the thermal tail below 1e-10 plus a margin of
// ten occupations and twenty levels for the conditional displacement.
int default_levels(const ModeSpec& mode);

// Normalized thermal occupation probabilities; throws truncation_error if the
// first excluded level would still carry more than 1e-10.
Eigen::VectorXd thermal_populations(const ModeSpec& mode, int n_levels);

// Conditional mode Hamiltonians for the two qubit branches, diagonalized once
// so propagators at any time are cheap.
class FockSystem {
  public:
    FockSystem(const ModeSpec& mode, double omega_q = 0.0);

    int levels() const { return levels_; }
    const ModeSpec& mode() const { return mode_; }
    double qubit_splitting() const { return omega_q_; }
    const Eigen::VectorXd& populations() const { return populations_; }

    Eigen::MatrixXcd propagator_plus(double t) const;
    Eigen::MatrixXcd propagator_minus(double t) const;

    // Joint 2N x 2N state U (rho_qubit x rho_thermal) U^dagger. Throws
    // truncation_error when the top two mode populations exceed 1e-6.
    Eigen::MatrixXcd evolve(const QubitBloch& initial, double t) const;

  private:
    ModeSpec mode_;
    double omega_q_{0.0};
    int levels_{0};
    Eigen::VectorXd populations_;
    Eigen::VectorXd evals_plus_, evals_minus_;
    Eigen::MatrixXd evecs_plus_, evecs_minus_;
};

// Partial transpose over the qubit factor: swaps the two off-diagonal N x N
// blocks and transposes nothing inside them. Applying it twice is the identity.
Eigen::MatrixXcd partial_transpose_qubit(const Eigen::MatrixXcd& joint);

// Smallest eigenvalue of the partially transposed state; negative values
// certify entanglement across the qubit | mode split.
double min_pt_eigenvalue(const Eigen::MatrixXcd& joint_pt);

// Times in (0, t_max] where the minimum PT eigenvalue changes sign, from a
// uniform scan refined by bisection. A negativity threshold of 1e-10 guards
// against eigensolver noise around zero.
std::vector<double> pt_negativity_times(const FockSystem& system,
                                        const QubitBloch& state, double t_max,
                                        int scan_points = 2000,
                                        double rel_tol = 1e-6);

// Closed-form kernels of the single mode (the continuum integrands evaluated
// at one frequency). Throws invalid_input when the thermal occupation
// underflows to zero, where the diagonal coefficient diverges.
KernelValues mode_kernels(const ModeSpec& mode, double t);

// All times in (0, t_max] where the single-mode entanglement witness crosses
// its bound: cos(omega t) = 1 - bound * omega^2 / (8 g^2 sinh(omega/T)).
// Empty when the witness peak stays at or below the bound, and empty for
// axis states (infinite bound).
std::vector<double> witness_crossing_times(const ModeSpec& mode,
                                           const QubitBloch& state, double t_max);

// Expectation of the partial transpose in the extremal test state; strictly
// negative exactly while the entanglement witness exceeds its bound.
double pt_witness_value(const ModeSpec& mode, const QubitBloch& state, double t);

// Determinant of the 2x2 weight block deciding the separability test:
// exp(-2 coeff_diag) (1-z^2) - exp(2 coeff_offdiag) (x^2+y^2).
double weight_det(const ModeSpec& mode, const QubitBloch& state, double t);

// Coefficients of the extremal test state used by the PT witness.
struct TestStateCoeffs {
    std::complex<double> u;
    std::complex<double> v;
};
TestStateCoeffs test_state(const QubitBloch& state);

}  // namespace dephase
