// model.hpp - single electron in a double quantum dot: charge (L/R) x spin
//
//   H = eps/2 tau_z + t tau_x + Bz/2 sigma_z + Bx/2 tau_z sigma_x
//
// Basis order is {|L0>, |L1>, |R0>, |R1>}: tau acts on the dot index (outer),
// sigma on the spin index (inner). Energies use k_B = 1 and one arbitrary unit.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>

#include <dqd/qmatrix.hpp>

namespace dqd {

struct ModelParams {
    double epsilon = 0.0;  // inter-dot detuning
    double t = 0.0;        // tunneling, >= 0
    double bz = 0.0;       // longitudinal field
    double bx = 0.0;       // transverse field gradient

    /// Throws ValidationError unless all finite and t >= 0.
    void validate() const;
};

/// Level labels in closed-form branch order: E1 = +r+, E2 = -r+, E3 = +r-, E4 = -r-
/// with r+- = sqrt(Sigma +- 2 sqrt(Omega)) / 2.
enum class Level { E1 = 0, E2 = 1, E3 = 2, E4 = 3 };

std::string to_string(Level l);

struct SpectrumResult {
    std::array<double, 4> energies{};   // indexed by Level
    std::array<Vec4, 4> eigenvectors{};  // indexed by Level, numerical
    double omega = 0.0;                  // 4 Bz^2 t^2 + eps^2 (Bz^2 + Bx^2)
    double sigma_cap = 0.0;              // Bz^2 + Bx^2 + 4 t^2 + eps^2

    double energy(Level l) const { return energies[static_cast<int>(l)]; }
    const Vec4& vector(Level l) const { return eigenvectors[static_cast<int>(l)]; }
};

Mat4 build_hamiltonian(const ModelParams& p);

/// Closed-form energies plus numerical eigenvectors matched to each label.
SpectrumResult analytic_energies(const ModelParams& p);

/// Closed-form levels only (no eigensolve), indexed by Level.
std::array<double, 4> closed_form_levels(const ModelParams& p);

/// The printed eigenvector coefficient formulas could not be evaluated
/// (a denominator vanishes). Callers fall back to numerical eigenvectors.
class AnalyticUnavailable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Comparison of one closed-form eigenvector against its numerical partner.
/// The closed form is normalized with the |R0> component equal to 1, so the
/// numerical vector is rescaled the same way for the per-coefficient columns;
/// those are NaN when the numerical |R0> component is ~0.
struct CoeffResidual {
    Level level = Level::E1;
    double a_residual = 0.0;
    double b_residual = 0.0;
    double b_residual_without_alpha = 0.0;  // b with the trailing alpha^2/(4 Bx t) dropped
    double c_residual = 0.0;
    double vector_residual = 0.0;           // max-abs, minimized over global sign
};

struct AnalyticCoeffs {
    double a_plus = 0, a_minus = 0, b_plus = 0, b_minus = 0, c_plus = 0, c_minus = 0;
    double at_plus = 0, at_minus = 0, bt_plus = 0, bt_minus = 0, ct_plus = 0, ct_minus = 0;
    double m_plus = 0, m_minus = 0, n_plus = 0, n_minus = 0;
    double alpha_sq = 0;
    std::array<CoeffResidual, 4> report{};  // indexed by Level

    /// Normalized closed-form eigenvector for a level.
    Vec4 vector(Level l) const;
};

/// Throws AnalyticUnavailable when |2t(Bz+eps)|, |Bx t (Bz+eps)| or
/// |(Bz+eps) Bx| is <= 1e-10.
AnalyticCoeffs analytic_coeffs(const ModelParams& p);

struct GroundState {
    double energy = 0.0;
    Vec4 vector{};        // largest-magnitude entry positive
    double gap = 0.0;     // E_1st_excited - E_ground
    bool degenerate = false;  // gap < 1e-10
};

GroundState ground_state(const ModelParams& p);

struct Anticrossing {
    double epsilon = 0.0;
    double gap = 0.0;
};

/// Minimizes |E_a(eps) - E_b(eps)| over [eps_lo, eps_hi]: coarse grid with
/// step <= 0.1 then golden-section on the bracketing cells to 1e-6 in eps.
/// Returns nullopt when the coarse minimum sits on an interval end (the gap
/// is monotonic there and no interior anticrossing exists). `p.epsilon` is
/// ignored. Allowed pairs: (E1,E3), (E2,E4), (E3,E4) in either order.
std::optional<Anticrossing> find_anticrossing(const ModelParams& p, std::pair<Level, Level> pair,
                                              double eps_lo, double eps_hi);

}  // namespace dqd
