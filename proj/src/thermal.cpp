// thermal.cpp
#include <dqd/thermal.hpp>

#include <cmath>
#include <string>

namespace dqd {

double ThermalState::log_partition() const {
    return -beta * energy_shift + std::log(z_shifted);
}

namespace {

struct Weights {
    Vec4 w{};
    double shift = 0.0;
    double z = 0.0;
};

Weights boltzmann(const Vec4& energies, double beta) {
    Weights out;
    out.shift = energies[0];
    for (double e : energies) out.shift = std::min(out.shift, e);
    for (std::size_t i = 0; i < 4; ++i) {
        out.w[i] = std::exp(-beta * (energies[i] - out.shift));
        out.z += out.w[i];
    }
    for (double& x : out.w) x /= out.z;
    return out;
}

void require_temperature(double temperature) {
    if (!std::isfinite(temperature) || temperature <= 0.0)
        throw ValidationError("temperature must be finite and > 0");
}

}  // namespace

DensityMatrix4 gibbs_state(const Mat4& h, double temperature) {
    require_temperature(temperature);
    const auto eig = eig_sym(h);
    const auto w = boltzmann(eig.values, 1.0 / temperature);
    EigenDecomp4 weighted{w.w, eig.vectors};
    return spectral_map(weighted, [](double x) { return x; });
}

ThermalState thermal_state(const ModelParams& p, double temperature) {
    require_temperature(temperature);
    const auto eig = eig_sym(build_hamiltonian(p));
    ThermalState s;
    s.params = p;
    s.temperature = temperature;
    s.beta = 1.0 / temperature;
    const auto w = boltzmann(eig.values, s.beta);
    s.energy_shift = w.shift;
    s.z_shifted = w.z;
    s.rho = spectral_map(EigenDecomp4{w.w, eig.vectors}, [](double x) { return x; });
    return s;
}

std::array<double, 4> populations(const ThermalState& s) {
    return {s.rho(0, 0), s.rho(1, 1), s.rho(2, 2), s.rho(3, 3)};
}

DensityMatrix2 reduce_a(const DensityMatrix4& r) {
    const double off = r(0, 2) + r(1, 3);
    return Mat2::rows({{r(0, 0) + r(1, 1), off}, {off, r(2, 2) + r(3, 3)}});
}

DensityMatrix2 reduce_b(const DensityMatrix4& r) {
    const double off = r(0, 1) + r(2, 3);
    return Mat2::rows({{r(0, 0) + r(2, 2), off}, {off, r(1, 1) + r(3, 3)}});
}

template <std::size_t N>
void require_density_matrix(const Mat<N>& rho, double trace_tol) {
    require_symmetric(rho, "density matrix");
    if (std::abs(trace(rho) - 1.0) > trace_tol)
        throw ValidationError("density matrix: trace " + std::to_string(trace(rho)) + " != 1");
    const auto eig = eig_sym(rho);
    if (eig.values[0] < -kPsdClamp)
        throw NotPsdError("density matrix: negative eigenvalue " + std::to_string(eig.values[0]));
}

template void require_density_matrix<2>(const Mat<2>&, double);
template void require_density_matrix<4>(const Mat<4>&, double);

}  // namespace dqd
