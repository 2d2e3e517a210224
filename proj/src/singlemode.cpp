#include "dephase/singlemode.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "dephase/criteria.hpp"
#include "dephase/errors.hpp"

namespace dephase {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTailBound = 1e-10;
constexpr double kLeakBound = 1e-6;
// Discarded thermal tail (kTailBound) perturbs PT eigenvalues at the 1e-10
// scale, so the negativity cut sits two decades above it; genuine crossings
// have O(1e-2) slopes and move by under 1e-6 in time.
constexpr double kNegativityThreshold = 1e-8;

using complexd = std::complex<double>;

double mode_osc_weight(double omega, double t) {
    const double s = std::sin(0.5 * omega * t);
    return 2.0 * (s / omega) * (s / omega);
}

}  // namespace

void validate(const ModeSpec& mode) {
    if (!(mode.omega > 0.0) || !std::isfinite(mode.omega))
        throw invalid_input("mode frequency must be positive and finite");
    if (!(mode.coupling >= 0.0) || !std::isfinite(mode.coupling))
        throw invalid_input("mode coupling must be nonnegative and finite");
    if (!(mode.temperature > 0.0) || !std::isfinite(mode.temperature))
        throw invalid_input("mode temperature must be positive and finite");
    if (mode.n_levels != 0 && mode.n_levels < 2)
        throw invalid_input("n_levels must be at least 2 (or 0 for automatic)");
}

int default_levels(const ModeSpec& mode) {
    validate(mode);
    const double nbar = thermal_occupation(mode.omega, mode.temperature);
    // margin for the conditional displacement on top of the thermal spread
    int levels = static_cast<int>(std::ceil(10.0 * nbar + 20.0));
    if (nbar > 0.0) {
        // smallest N with nbar^N/(nbar+1)^{N+1} < tail bound
        const double step = std::log(nbar / (nbar + 1.0));  // negative
        const int n_tail = static_cast<int>(
            std::ceil((std::log(kTailBound) + std::log1p(nbar)) / step)) + 1;
        levels = std::max(levels, n_tail);
    }
    return std::max(levels, 2);
}

Eigen::VectorXd thermal_populations(const ModeSpec& mode, int n_levels) {
    validate(mode);
    if (n_levels < 2) throw invalid_input("n_levels must be at least 2");
    const double nbar = thermal_occupation(mode.omega, mode.temperature);
    const double ratio = nbar / (nbar + 1.0);

    Eigen::VectorXd populations(n_levels);
    double p = 1.0 / (nbar + 1.0);
    for (int n = 0; n < n_levels; ++n) {
        populations[n] = p;
        p *= ratio;
    }
    // p now holds the first excluded level
    if (!(p < kTailBound))
        throw truncation_error("thermal tail above the truncation is " +
                               std::to_string(p) + "; raise n_levels");
    populations /= populations.sum();
    return populations;
}

FockSystem::FockSystem(const ModeSpec& mode, double omega_q)
    : mode_(mode), omega_q_(omega_q) {
    validate(mode);
    if (!std::isfinite(omega_q)) throw invalid_input("qubit splitting must be finite");
    levels_ = mode.n_levels > 0 ? mode.n_levels : default_levels(mode);
    populations_ = thermal_populations(mode, levels_);

    // H_pm = pm omega_q/2 + omega a^dag a pm g (a + a^dag): real symmetric
    // tridiagonal, diagonalized once so propagators at any t are cheap
    Eigen::MatrixXd h_plus = Eigen::MatrixXd::Zero(levels_, levels_);
    Eigen::MatrixXd h_minus = Eigen::MatrixXd::Zero(levels_, levels_);
    for (int n = 0; n < levels_; ++n) {
        h_plus(n, n) = mode.omega * n + 0.5 * omega_q;
        h_minus(n, n) = mode.omega * n - 0.5 * omega_q;
        if (n + 1 < levels_) {
            const double hop = mode.coupling * std::sqrt(n + 1.0);
            h_plus(n, n + 1) = hop;
            h_plus(n + 1, n) = hop;
            h_minus(n, n + 1) = -hop;
            h_minus(n + 1, n) = -hop;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver_plus(h_plus);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver_minus(h_minus);
    if (solver_plus.info() != Eigen::Success || solver_minus.info() != Eigen::Success)
        throw numeric_error("eigendecomposition of the conditional Hamiltonians failed");
    evals_plus_ = solver_plus.eigenvalues();
    evecs_plus_ = solver_plus.eigenvectors();
    evals_minus_ = solver_minus.eigenvalues();
    evecs_minus_ = solver_minus.eigenvectors();
}

namespace {

Eigen::MatrixXcd propagator_from(const Eigen::VectorXd& evals,
                                 const Eigen::MatrixXd& evecs, double t) {
    Eigen::VectorXcd phases(evals.size());
    for (Eigen::Index j = 0; j < evals.size(); ++j)
        phases[j] = std::polar(1.0, -evals[j] * t);
    return evecs * phases.asDiagonal() * evecs.transpose();
}

}  // namespace

Eigen::MatrixXcd FockSystem::propagator_plus(double t) const {
    return propagator_from(evals_plus_, evecs_plus_, t);
}

Eigen::MatrixXcd FockSystem::propagator_minus(double t) const {
    return propagator_from(evals_minus_, evecs_minus_, t);
}

Eigen::MatrixXcd FockSystem::evolve(const QubitBloch& initial, double t) const {
    validate(initial);
    const int n = levels_;
    const Eigen::MatrixXcd u_plus = propagator_plus(t);
    const Eigen::MatrixXcd u_minus = propagator_minus(t);

    // qubit density matrix entries
    const complexd q00(0.5 * (1.0 + initial.z), 0.0);
    const complexd q11(0.5 * (1.0 - initial.z), 0.0);
    const complexd q01(0.5 * initial.x, -0.5 * initial.y);

    const Eigen::MatrixXcd plus_th = u_plus * populations_.asDiagonal();
    const Eigen::MatrixXcd minus_th = u_minus * populations_.asDiagonal();

    Eigen::MatrixXcd joint(2 * n, 2 * n);
    joint.block(0, 0, n, n) = q00 * (plus_th * u_plus.adjoint());
    joint.block(0, n, n, n) = q01 * (plus_th * u_minus.adjoint());
    joint.block(n, 0, n, n) = std::conj(q01) * (minus_th * u_plus.adjoint());
    joint.block(n, n, n, n) = q11 * (minus_th * u_minus.adjoint());

    // population leaking into the top of the truncated ladder invalidates
    // everything downstream
    const double top = std::real(joint(n - 1, n - 1) + joint(2 * n - 1, 2 * n - 1));
    const double below = std::real(joint(n - 2, n - 2) + joint(2 * n - 2, 2 * n - 2));
    if (std::max(top, below) > kLeakBound)
        throw truncation_error("top-level Fock population " +
                               std::to_string(std::max(top, below)) +
                               " exceeds 1e-6; raise n_levels");
    return joint;
}

Eigen::MatrixXcd partial_transpose_qubit(const Eigen::MatrixXcd& joint) {
    const Eigen::Index size = joint.rows();
    if (size != joint.cols() || size % 2 != 0)
        throw invalid_input("joint state must be a square matrix of even dimension");
    const Eigen::Index n = size / 2;
    Eigen::MatrixXcd out(size, size);
    out.block(0, 0, n, n) = joint.block(0, 0, n, n);
    out.block(n, n, n, n) = joint.block(n, n, n, n);
    // transposing the qubit index swaps the off-diagonal blocks wholesale
    out.block(0, n, n, n) = joint.block(n, 0, n, n);
    out.block(n, 0, n, n) = joint.block(0, n, n, n);
    return out;
}

double min_pt_eigenvalue(const Eigen::MatrixXcd& joint_pt) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(joint_pt,
                                                           Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw numeric_error("partial transpose eigensolve failed");
    return solver.eigenvalues().minCoeff();
}

std::vector<double> pt_negativity_times(const FockSystem& system,
                                        const QubitBloch& state, double t_max,
                                        int scan_points, double rel_tol) {
    validate(state);
    if (!(t_max > 0.0) || !std::isfinite(t_max))
        throw invalid_input("t_max must be positive and finite");
    if (scan_points < 2) throw invalid_input("scan needs at least 2 points");
    if (!(rel_tol > 0.0)) throw invalid_input("rel_tol must be positive");

    auto negative = [&](double t) {
        return min_pt_eigenvalue(partial_transpose_qubit(system.evolve(state, t))) <
               -kNegativityThreshold;
    };

    std::vector<double> crossings;
    const double dt = t_max / scan_points;
    bool prev = false;  // the t = 0 product state is PPT
    double t_prev = 0.0;
    for (int i = 1; i <= scan_points; ++i) {
        const double t = (i == scan_points) ? t_max : i * dt;
        const bool now = negative(t);
        if (now != prev) {
            double lo = t_prev;
            double hi = t;
            while (hi - lo > rel_tol * hi) {
                const double mid = 0.5 * (lo + hi);
                (negative(mid) == prev ? lo : hi) = mid;
            }
            crossings.push_back(0.5 * (lo + hi));
        }
        prev = now;
        t_prev = t;
    }
    return crossings;
}

KernelValues mode_kernels(const ModeSpec& mode, double t) {
    validate(mode);
    if (!(t >= 0.0) || !std::isfinite(t))
        throw invalid_input("time must be nonnegative and finite");
    const double nbar = thermal_occupation(mode.omega, mode.temperature);
    if (nbar == 0.0)
        throw invalid_input(
            "thermal occupation underflows to zero; the diagonal weight exponent "
            "diverges at this temperature");

    const double osc = mode_osc_weight(mode.omega, t);
    const double g2 = mode.coupling * mode.coupling;
    const double inv_nbar = std::expm1(mode.omega / mode.temperature);

    KernelValues v;
    v.coeff_diag = 2.0 * g2 * inv_nbar * osc;
    v.coeff_offdiag = 2.0 * g2 * (inv_nbar + 2.0) * osc;
    v.witness_sep = 4.0 * g2 * (inv_nbar + 1.0) * osc;
    v.witness_sep_dual = 4.0 * g2 * std::exp(-mode.omega / mode.temperature) * osc;
    v.witness_ent = 8.0 * g2 * std::sinh(mode.omega / mode.temperature) * osc;
    v.rate = 4.0 * g2 * (2.0 * nbar + 1.0) * std::sin(mode.omega * t) / mode.omega;
    v.exponent = 4.0 * g2 * (2.0 * nbar + 1.0) * osc;
    return v;
}

std::vector<double> witness_crossing_times(const ModeSpec& mode,
                                           const QubitBloch& state, double t_max) {
    validate(mode);
    validate(state);
    if (!(t_max > 0.0) || !std::isfinite(t_max))
        throw invalid_input("t_max must be positive and finite");

    const double bound = entanglement_bound(state);
    if (std::isinf(bound)) return {};
    const double g2 = mode.coupling * mode.coupling;
    const double peak_coeff =
        8.0 * g2 * std::sinh(mode.omega / mode.temperature) / (mode.omega * mode.omega);
    // witness = peak_coeff * (1 - cos omega t); crossings need the peak 2*peak_coeff
    // to clear the bound
    const double c_star = 1.0 - bound / peak_coeff;
    if (!(c_star > -1.0)) return {};

    const double phase = std::acos(std::min(c_star, 1.0));
    const double period = 2.0 * kPi / mode.omega;
    std::vector<double> crossings;
    for (int k = 0;; ++k) {
        const double up = (phase + 2.0 * kPi * k) / mode.omega;
        const double down = (2.0 * kPi * (k + 1) - phase) / mode.omega;
        if (up > t_max && down > t_max) break;
        if (up > 0.0 && up <= t_max) crossings.push_back(up);
        if (down > 0.0 && down <= t_max) crossings.push_back(down);
    }
    // phase = 0 (zero bound) makes consecutive pairs coincide at the revivals
    std::sort(crossings.begin(), crossings.end());
    crossings.erase(std::unique(crossings.begin(), crossings.end()), crossings.end());
    return crossings;
}

double pt_witness_value(const ModeSpec& mode, const QubitBloch& state, double t) {
    validate(state);
    if (!(state.r() > 0.0))
        throw invalid_input("test state is undefined for the maximally mixed qubit");
    const KernelValues k = mode_kernels(mode, t);
    const double nbar = thermal_occupation(mode.omega, mode.temperature);
    const double r = state.r();
    const double z2 = state.z * state.z;
    return (0.5 / (nbar + 1.0)) *
           (std::exp(-k.coeff_diag + 0.5 * k.witness_sep_dual) * (1.0 - z2 / r) -
            std::exp(k.coeff_offdiag - 0.5 * k.witness_sep_dual) *
                state.rho_perp_sq() / r);
}

double weight_det(const ModeSpec& mode, const QubitBloch& state, double t) {
    validate(state);
    const KernelValues k = mode_kernels(mode, t);
    return std::exp(-2.0 * k.coeff_diag) * (1.0 - state.z * state.z) -
           std::exp(2.0 * k.coeff_offdiag) * state.rho_perp_sq();
}

TestStateCoeffs test_state(const QubitBloch& state) {
    validate(state);
    const double r = state.r();
    if (!(r > 0.0))
        throw invalid_input("test state is undefined for the maximally mixed qubit");
    const double ratio = std::clamp(state.z / r, -1.0, 1.0);
    const double phi = std::atan2(state.y, state.x);
    TestStateCoeffs coeffs;
    coeffs.u = -std::sqrt(0.5 * (1.0 - ratio));
    coeffs.v = std::polar(std::sqrt(0.5 * (1.0 + ratio)), -phi);
    return coeffs;
}

}  // namespace dephase
