// correlations.cpp
#include <dqd/correlations.hpp>

#include <algorithm>
#include <functional>
#include <limits>
#include <string>

namespace dqd {

namespace {

template <std::size_t N>
Mat<N> symmetrized(const Mat<N>& m) {
    return 0.5 * (m + transpose(m));
}

std::array<double, 4> sorted_descending(std::array<double, 4> v) {
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

double root(double lambda) {
    return lambda > 0.0 ? std::sqrt(lambda) : 0.0;
}

double clamp01(double x) {
    return std::clamp(x, 0.0, 1.0);
}

// Eigenvalues of a PSD product at the eigensolver's round-off floor; their
// square roots would otherwise add ~1e-8 of noise.
double roundoff_floor(double largest) {
    return 16.0 * std::numeric_limits<double>::epsilon() * std::max(0.0, largest);
}

}  // namespace

RSpectrum r_spectrum(const DensityMatrix4& rho) {
    require_density_matrix(rho);
    const Mat4 s = spin_flip();
    const Mat4 sq = psd_sqrt(rho);
    const auto eig = eig_sym(symmetrized(sq * s * rho * s * sq));
    const double floor = roundoff_floor(eig.values[3]);
    RSpectrum out;
    for (std::size_t i = 0; i < 4; ++i) out.lambdas[i] = eig.values[i] > floor ? eig.values[i] : 0.0;
    out.lambdas = sorted_descending(out.lambdas);
    out.labeled = out.lambdas;
    return out;
}

double concurrence(const DensityMatrix4& rho) {
    const auto spec = r_spectrum(rho);
    const double c = root(spec.lambdas[0]) - root(spec.lambdas[1]) - root(spec.lambdas[2]) - root(spec.lambdas[3]);
    return clamp01(c);
}

ClosedFormConcurrence concurrence_closed_form(const DensityMatrix4& rho) {
    require_density_matrix(rho);
    const double r11 = rho(0, 0), r12 = rho(0, 1), r13 = rho(0, 2), r14 = rho(0, 3);
    const double r22 = rho(1, 1), r24 = rho(1, 3);

    RSpectrum sp;
    sp.g_cap = -2.0 * r14 * r12 + r11 * r24 - r13 * r22;
    sp.theta_cap = r11 * r22 - r13 * r24 + r14 * r14 + r12 * r12;
    sp.xi_plus = 2.0 * (r12 + r14) * (r22 + r24);
    sp.xi_minus = 2.0 * (r12 - r14) * (r22 - r24);
    sp.sig_plus = 2.0 * (r13 - r11) * (r14 + r12);
    sp.sig_minus = 2.0 * (r13 + r11) * (r14 - r12);

    auto wootters_variant = [](const std::array<double, 4>& l) {
        const double c = std::abs(root(l[0]) - root(l[2])) - root(l[1]) - root(l[3]);
        return clamp01(c);
    };

    bool negative = false;
    auto radical = [&negative](double product) {
        if (product < 0.0) negative = true;
        return root(product);
    };

    const double upper = sp.theta_cap + sp.g_cap;
    const double lower = sp.theta_cap - sp.g_cap;
    const double printed = radical(sp.xi_plus * sp.sig_plus);
    sp.labeled = {upper + printed, upper - printed, lower + printed, lower - printed};
    sp.negative_radicand = negative;

    const double conj = root(sp.xi_minus * sp.sig_minus);
    const std::array<double, 4> conj_labeled{upper + printed, upper - printed, lower + conj, lower - conj};

    for (std::size_t i = 0; i < 4; ++i) sp.lambdas[i] = std::max(0.0, sp.labeled[i]);
    sp.lambdas = sorted_descending(sp.lambdas);

    ClosedFormConcurrence out;
    out.value = wootters_variant(sp.labeled);
    out.conjugate_branch = wootters_variant(conj_labeled);
    out.spectrum = sp;
    return out;
}

double fidelity_pure(const Vec4& psi, const DensityMatrix4& rho) {
    if (std::abs(std::sqrt(dot(psi, psi)) - 1.0) > 1e-10) throw ValidationError("fidelity_pure: state not normalized");
    require_density_matrix(rho);
    return clamp01(dot(psi, rho * psi));
}

double fidelity_mixed(const DensityMatrix4& rho1, const DensityMatrix4& rho2) {
    require_density_matrix(rho1);
    require_density_matrix(rho2);
    // Eigenvalues below the round-off floor are not resolved by the input
    // entries; zeroing them in both factors keeps F symmetric to ~1e-15.
    auto floored_sqrt = [](const DensityMatrix4& rho) {
        const auto e = eig_sym(rho);
        const double floor = roundoff_floor(e.values[3]);
        return spectral_map(e, [floor](double w) { return w > floor ? std::sqrt(w) : 0.0; });
    };
    const Mat4 s1 = floored_sqrt(rho1);
    const Mat4 s2 = floored_sqrt(rho2);
    const Mat4 x = s1 * s2;
    const auto eig = eig_sym(symmetrized(transpose(x) * x));
    const double floor = roundoff_floor(eig.values[3]);
    double f = 0.0;
    for (double w : eig.values)
        if (w > floor) f += std::sqrt(w);
    return clamp01(f);
}

double eigenvector_angle(const DensityMatrix2& rho) {
    const auto eig = eig_sym(rho);
    // U = V^T; first row of U is (cos, -sin).
    return std::atan2(-eig.vectors(1, 0), eig.vectors(0, 0));
}

namespace {

double formula_angle(double chi, double off) {
    if (std::abs(off) < 1e-12) return 0.0;
    return std::atan((chi + std::sqrt(chi * chi + 4.0 * off * off)) / (2.0 * off));
}

double offdiag_after(const DensityMatrix2& rho, double theta) {
    const Mat2 u = rotation(theta);
    return std::abs((u * rho * transpose(u))(0, 1));
}

struct SideAngle {
    double theta;
    bool fallback;
    double formula_offdiag;
};

SideAngle resolve_angle(const DensityMatrix2& reduced, double chi, double off) {
    const double theta = formula_angle(chi, off);
    const double residual = offdiag_after(reduced, theta);
    if (residual <= kDiagonalTol) return {theta, false, residual};
    return {eigenvector_angle(reduced), true, residual};
}

}  // namespace

LocalBasisAngles local_angles(const DensityMatrix2& rho_a, const DensityMatrix2& rho_b, const DensityMatrix4& r) {
    const double chi_a = r(0, 0) + r(1, 1) - r(2, 2) - r(3, 3);
    const double chi_b = r(0, 0) - r(1, 1) + r(2, 2) - r(3, 3);
    const double off_a = r(0, 2) + r(1, 3);
    const double off_b = r(0, 1) + r(2, 3);

    const auto a = resolve_angle(rho_a, chi_a, off_a);
    const auto b = resolve_angle(rho_b, chi_b, off_b);

    LocalBasisAngles out;
    out.theta_a = a.theta;
    out.theta_b = b.theta;
    out.fallback_a = a.fallback;
    out.fallback_b = b.fallback;
    out.formula_offdiag_a = a.formula_offdiag;
    out.formula_offdiag_b = b.formula_offdiag;
    return out;
}

LocalBasisAngles local_angles(const DensityMatrix4& rho) {
    return local_angles(reduce_a(rho), reduce_b(rho), rho);
}

CorrelatedCoherence correlated_coherence_details(const DensityMatrix4& rho) {
    require_density_matrix(rho);
    CorrelatedCoherence out;
    out.angles = local_angles(rho);
    const Mat4 u = kron2(rotation(out.angles.theta_a), rotation(out.angles.theta_b));
    out.rotated = u * rho * transpose(u);
    out.global_l1 = l1_coherence(out.rotated);
    out.local_a = l1_coherence(reduce_a(out.rotated));
    out.local_b = l1_coherence(reduce_b(out.rotated));
    // Each local term counts both off-diagonal entries, so compare against 2x.
    if (out.local_a > 2.0 * kDiagonalTol || out.local_b > 2.0 * kDiagonalTol)
        throw InvariantViolation("correlated_coherence: local rotation left off-diagonal " +
                                 std::to_string(std::max(out.local_a, out.local_b)));
    out.value = out.global_l1 - out.local_a - out.local_b;
    return out;
}

double correlated_coherence(const DensityMatrix4& rho) {
    return correlated_coherence_details(rho).value;
}

}  // namespace dqd
