// correlations.hpp - two-qubit correlation measures on real density matrices:
// Wootters concurrence, fidelities, l1 coherence and correlated coherence.
#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include <dqd/qmatrix.hpp>
#include <dqd/thermal.hpp>

namespace dqd {

/// A post-condition that must hold by construction did not.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Spectrum of R = rho (sy x sy) rho* (sy x sy).
struct RSpectrum {
    std::array<double, 4> lambdas{};  // clamped at 0, descending
    std::array<double, 4> labeled{};  // lambda_1..4 in the closed-form branch order (closed-form path)
    double theta_cap = 0.0;
    double g_cap = 0.0;
    double xi_plus = 0.0, xi_minus = 0.0;
    double sig_plus = 0.0, sig_minus = 0.0;
    bool negative_radicand = false;  // Xi*Sigma < 0: lambdas were complex, radicand clamped
};

/// Eigenvalues of R through the symmetric similar matrix sqrt(rho) S rho S sqrt(rho).
RSpectrum r_spectrum(const DensityMatrix4& rho);

/// C = max(0, 2 max sqrt(lambda) - sum sqrt(lambda)).
double concurrence(const DensityMatrix4& rho);

struct ClosedFormConcurrence {
    double value = 0.0;               // printed formulas: Xi+ Sigma+ under both branches
    double conjugate_branch = 0.0;    // same, with Xi- Sigma- for lambda_3,4
    RSpectrum spectrum{};             // printed-formula spectrum
};

/// Closed-form (Theta, G, Xi, Sigma) route with
/// C = max(0, |sqrt(l1) - sqrt(l3)| - sqrt(l2) - sqrt(l4)).
/// A validation path only: compare against concurrence().
ClosedFormConcurrence concurrence_closed_form(const DensityMatrix4& rho);

/// <psi|rho|psi>. psi must be normalized to 1e-10.
double fidelity_pure(const Vec4& psi, const DensityMatrix4& rho);

/// Uhlmann fidelity Tr sqrt(sqrt(rho2) rho1 sqrt(rho2)) (not squared).
double fidelity_mixed(const DensityMatrix4& rho1, const DensityMatrix4& rho2);

/// Sum of |off-diagonal| entries in the current basis.
template <std::size_t N>
double l1_coherence(const Mat<N>& rho) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            if (i != j) s += std::abs(rho(i, j));
    return s;
}

/// Rotation angles U(theta) = [[cos, -sin], [sin, cos]] (phi = 0) that make
/// U rho_x U^T diagonal for each subsystem.
struct LocalBasisAngles {
    double theta_a = 0.0;
    double theta_b = 0.0;
    double phi_a = 0.0;
    double phi_b = 0.0;
    bool fallback_a = false;  // closed-form angle failed to diagonalize; eigenvector angle used
    bool fallback_b = false;
    double formula_offdiag_a = 0.0;  // |off-diagonal| left by the closed-form angle
    double formula_offdiag_b = 0.0;
};

inline constexpr double kDiagonalTol = 1e-10;

/// theta = arctan[(chi + sqrt(chi^2 + 4 o^2)) / (2 o)] with
/// chi_A = r11 + r22 - r33 - r44, o_A = r13 + r24 (B: chi_B = r11 - r22 + r33 - r44,
/// o_B = r12 + r34). theta = 0 when |o| < 1e-12.
LocalBasisAngles local_angles(const DensityMatrix2& rho_a, const DensityMatrix2& rho_b, const DensityMatrix4& rho);
LocalBasisAngles local_angles(const DensityMatrix4& rho);

/// Angle of the rotation built from eig_sym eigenvectors of a 2x2 symmetric matrix.
double eigenvector_angle(const DensityMatrix2& rho);

struct CorrelatedCoherence {
    double value = 0.0;     // l1(rotated) - l1(rotated_A) - l1(rotated_B)
    double global_l1 = 0.0;
    double local_a = 0.0;
    double local_b = 0.0;
    LocalBasisAngles angles{};
    DensityMatrix4 rotated{};
};

/// Throws InvariantViolation if either rotated reduced state keeps an
/// off-diagonal above kDiagonalTol.
CorrelatedCoherence correlated_coherence_details(const DensityMatrix4& rho);
double correlated_coherence(const DensityMatrix4& rho);

}  // namespace dqd
