// thermal.hpp - Gibbs state rho = exp(-H/T) / Z and its reductions
#pragma once

#include <array>

#include <dqd/model.hpp>
#include <dqd/qmatrix.hpp>

namespace dqd {

/// Subsystem A is the charge (dot) qubit, B the spin qubit.
using DensityMatrix4 = Mat4;
using DensityMatrix2 = Mat2;

struct ThermalState {
    DensityMatrix4 rho{};
    double energy_shift = 0.0;  // E_min subtracted before exponentiating
    double z_shifted = 0.0;     // sum_i exp(-beta (E_i - E_min)); Z = exp(-beta E_min) z_shifted
    double beta = 0.0;
    double temperature = 0.0;
    ModelParams params{};

    double log_partition() const;
};

/// Throws ValidationError when T <= 0 or not finite. Arbitrarily low T is
/// fine: the result degrades gracefully to the ground-state projector.
ThermalState thermal_state(const ModelParams& p, double temperature);

/// Gibbs state of an arbitrary symmetric Hamiltonian (same contract).
DensityMatrix4 gibbs_state(const Mat4& h, double temperature);

/// Diagonal (rho11, rho22, rho33, rho44) in {|L0>, |L1>, |R0>, |R1>}.
std::array<double, 4> populations(const ThermalState& s);

/// Tr_B: [[r11+r22, r13+r24], [r13+r24, r33+r44]]
DensityMatrix2 reduce_a(const DensityMatrix4& rho);
/// Tr_A: [[r11+r33, r12+r34], [r12+r34, r22+r44]]
DensityMatrix2 reduce_b(const DensityMatrix4& rho);

inline DensityMatrix2 reduce_a(const ThermalState& s) { return reduce_a(s.rho); }
inline DensityMatrix2 reduce_b(const ThermalState& s) { return reduce_b(s.rho); }

/// Checks a candidate density matrix: finite, symmetric, unit trace within
/// `trace_tol`, eigenvalues >= -1e-12. Throws ValidationError / NotPsdError.
template <std::size_t N>
void require_density_matrix(const Mat<N>& rho, double trace_tol = 1e-10);

}  // namespace dqd
