// model.cpp - DQD Hamiltonian, closed-form spectrum and eigenvector coefficients
#include <dqd/model.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include <dqd/search.hpp>

namespace dqd {

void ModelParams::validate() const {
    if (!std::isfinite(epsilon) || !std::isfinite(t) || !std::isfinite(bz) || !std::isfinite(bx))
        throw ValidationError("ModelParams: non-finite parameter");
    if (t < 0.0) throw ValidationError("ModelParams: tunneling t must be >= 0");
}

std::string to_string(Level l) {
    switch (l) {
        case Level::E1: return "E1";
        case Level::E2: return "E2";
        case Level::E3: return "E3";
        case Level::E4: return "E4";
    }
    return "?";
}

Mat4 build_hamiltonian(const ModelParams& p) {
    p.validate();
    const double e = 0.5 * p.epsilon;
    const double z = 0.5 * p.bz;
    const double x = 0.5 * p.bx;
    return Mat4::rows({
        {e + z, x, p.t, 0.0},
        {x, e - z, 0.0, p.t},
        {p.t, 0.0, -e + z, -x},
        {0.0, p.t, -x, -e - z},
    });
}

namespace {

struct Invariants {
    double omega;
    double sigma;
    double r_plus;   // +E1
    double r_minus;  // +E3
};

Invariants invariants(const ModelParams& p) {
    p.validate();
    const double bz2 = p.bz * p.bz;
    const double bx2 = p.bx * p.bx;
    const double e2 = p.epsilon * p.epsilon;
    Invariants inv;
    inv.omega = 4.0 * bz2 * p.t * p.t + e2 * (bz2 + bx2);
    inv.sigma = bz2 + bx2 + 4.0 * p.t * p.t + e2;
    const double root = 2.0 * std::sqrt(inv.omega);
    inv.r_plus = 0.5 * std::sqrt(inv.sigma + root);
    // Sigma - 2 sqrt(Omega) is exactly >= 0 but can round to a tiny negative.
    inv.r_minus = 0.5 * std::sqrt(std::max(0.0, inv.sigma - root));
    return inv;
}

int idx(Level l) { return static_cast<int>(l); }

}  // namespace

std::array<double, 4> closed_form_levels(const ModelParams& p) {
    const auto inv = invariants(p);
    return {inv.r_plus, -inv.r_plus, inv.r_minus, -inv.r_minus};
}

SpectrumResult analytic_energies(const ModelParams& p) {
    const auto inv = invariants(p);
    SpectrumResult s;
    s.omega = inv.omega;
    s.sigma_cap = inv.sigma;
    s.energies = {inv.r_plus, -inv.r_plus, inv.r_minus, -inv.r_minus};

    // Both sides sorted ascending: E2 <= E4 <= E3 <= E1 pairs with the
    // numerical values in order, which is nearest-value matching.
    const auto eig = eig_sym(build_hamiltonian(p));
    constexpr std::array<Level, 4> ascending{Level::E2, Level::E4, Level::E3, Level::E1};
    for (std::size_t k = 0; k < 4; ++k) s.eigenvectors[idx(ascending[k])] = column(eig.vectors, k);
    return s;
}

Vec4 AnalyticCoeffs::vector(Level l) const {
    Vec4 v{};
    double norm = 0.0;
    switch (l) {
        case Level::E1: v = {a_plus, b_plus, 1.0, c_plus}; norm = m_plus; break;
        case Level::E2: v = {a_minus, b_minus, 1.0, c_minus}; norm = m_minus; break;
        case Level::E3: v = {at_plus, bt_plus, 1.0, ct_plus}; norm = n_plus; break;
        case Level::E4: v = {at_minus, bt_minus, 1.0, ct_minus}; norm = n_minus; break;
    }
    for (double& x : v) x *= norm;
    return v;
}

AnalyticCoeffs analytic_coeffs(const ModelParams& p) {
    const auto inv = invariants(p);
    const double eps = p.epsilon;
    const double bz = p.bz;
    const double bx = p.bx;
    const double t = p.t;
    const double shift = bz + eps;

    constexpr double tiny = 1e-10;
    if (std::abs(2.0 * t * shift) <= tiny || std::abs(bx * t * shift) <= tiny || std::abs(shift * bx) <= tiny)
        throw AnalyticUnavailable("analytic_coeffs: vanishing denominator (t, Bx or Bz+eps ~ 0)");

    const double e1 = inv.r_plus;
    const double e3 = inv.r_minus;
    const double split = e1 * e1 - e3 * e3;

    AnalyticCoeffs c;
    c.alpha_sq = bz * bz + bx * bx - eps * eps - 4.0 * t * t;
    const double b_tail = c.alpha_sq / (4.0 * bx * t);

    auto a_of = [&](double s, double e, double other) { return ((eps + s * e) * (eps + s * e) - other * other) / (2.0 * t * shift); };
    auto c_of = [&](double s, double e, double other) { return ((bz - s * e) * (bz - s * e) - other * other) / (shift * bx); };
    // The +-split sign is flipped between the M and N families.
    auto b_core = [&](double s, double e, double split_sign) {
        return e * (-s * bz * eps + (eps - bz) * e + split_sign * s * split) / (bx * t * shift);
    };

    c.a_plus = a_of(+1, e1, e3);
    c.a_minus = a_of(-1, e1, e3);
    c.b_plus = b_core(+1, e1, +1) + b_tail;
    c.b_minus = b_core(-1, e1, +1) + b_tail;
    c.c_plus = c_of(+1, e1, e3);
    c.c_minus = c_of(-1, e1, e3);

    c.at_plus = a_of(+1, e3, e1);
    c.at_minus = a_of(-1, e3, e1);
    c.bt_plus = b_core(+1, e3, -1) + b_tail;
    c.bt_minus = b_core(-1, e3, -1) + b_tail;
    c.ct_plus = c_of(+1, e3, e1);
    c.ct_minus = c_of(-1, e3, e1);

    auto norm = [](double a, double b, double cc) { return 1.0 / std::sqrt(a * a + b * b + cc * cc + 1.0); };
    c.m_plus = norm(c.a_plus, c.b_plus, c.c_plus);
    c.m_minus = norm(c.a_minus, c.b_minus, c.c_minus);
    c.n_plus = norm(c.at_plus, c.bt_plus, c.ct_plus);
    c.n_minus = norm(c.at_minus, c.bt_minus, c.ct_minus);

    const auto spectrum = analytic_energies(p);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (Level l : {Level::E1, Level::E2, Level::E3, Level::E4}) {
        const Vec4& num = spectrum.vector(l);
        const Vec4 closed = c.vector(l);
        CoeffResidual r;
        r.level = l;
        double plus = 0.0, minus = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            plus = std::max(plus, std::abs(closed[i] - num[i]));
            minus = std::max(minus, std::abs(closed[i] + num[i]));
        }
        r.vector_residual = std::min(plus, minus);

        // closed / norm has unit |R0> component.
        const double norm_l = closed[2];
        if (std::abs(num[2]) > 1e-12 && norm_l != 0.0) {
            const double a = num[0] / num[2], b = num[1] / num[2], cc = num[3] / num[2];
            r.a_residual = std::abs(closed[0] / norm_l - a);
            r.b_residual = std::abs(closed[1] / norm_l - b);
            r.b_residual_without_alpha = std::abs(closed[1] / norm_l - b_tail - b);
            r.c_residual = std::abs(closed[3] / norm_l - cc);
        } else {
            r.a_residual = r.b_residual = r.b_residual_without_alpha = r.c_residual = nan;
        }
        c.report[idx(l)] = r;
    }
    return c;
}

GroundState ground_state(const ModelParams& p) {
    const auto eig = eig_sym(build_hamiltonian(p));
    GroundState g;
    g.energy = eig.values[0];
    g.vector = column(eig.vectors, 0);
    g.gap = eig.values[1] - eig.values[0];
    g.degenerate = g.gap < 1e-10;

    std::size_t big = 0;
    for (std::size_t i = 1; i < 4; ++i)
        if (std::abs(g.vector[i]) > std::abs(g.vector[big])) big = i;
    if (g.vector[big] < 0)
        for (double& x : g.vector) x = -x;
    return g;
}

std::optional<Anticrossing> find_anticrossing(const ModelParams& p, std::pair<Level, Level> pair,
                                              double eps_lo, double eps_hi) {
    if (!std::isfinite(eps_lo) || !std::isfinite(eps_hi) || !(eps_lo < eps_hi))
        throw ValidationError("find_anticrossing: invalid detuning interval");
    auto [la, lb] = pair;
    if (idx(la) > idx(lb)) std::swap(la, lb);
    const bool allowed = (la == Level::E1 && lb == Level::E3) || (la == Level::E2 && lb == Level::E4) ||
                         (la == Level::E3 && lb == Level::E4);
    if (!allowed) throw ValidationError("find_anticrossing: unsupported level pair");

    auto gap = [&](double eps) {
        ModelParams q = p;
        q.epsilon = eps;
        const auto e = closed_form_levels(q);
        return std::abs(e[idx(la)] - e[idx(lb)]);
    };

    const auto cells = static_cast<std::size_t>(std::ceil((eps_hi - eps_lo) / 0.1));
    const std::size_t n = std::max<std::size_t>(cells, 2);
    const double step = (eps_hi - eps_lo) / static_cast<double>(n);
    std::size_t best = 0;
    double best_gap = gap(eps_lo);
    for (std::size_t i = 1; i <= n; ++i) {
        const double g = gap(eps_lo + step * static_cast<double>(i));
        if (g < best_gap) {
            best_gap = g;
            best = i;
        }
    }
    if (best == 0 || best == n) return std::nullopt;

    const double lo = eps_lo + step * static_cast<double>(best - 1);
    const double hi = eps_lo + step * static_cast<double>(best + 1);
    const auto [x, fx] = golden_section_minimize(gap, lo, hi, 1e-6);
    return Anticrossing{x, fx};
}

}  // namespace dqd
