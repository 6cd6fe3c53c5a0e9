// validate.cpp
#include <dqd/validate.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include <dqd/correlations.hpp>
#include <dqd/csv.hpp>
#include <dqd/thermal.hpp>

namespace dqd {

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::ok: return "ok";
        case CheckStatus::flagged: return "flagged";
        case CheckStatus::skipped: return "skipped";
        case CheckStatus::failed: return "FAIL";
    }
    return "?";
}

std::size_t ValidationReport::count(CheckStatus s) const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [s](const CheckRow& r) { return r.status == s; }));
}

std::size_t ValidationReport::count(const std::string& check, CheckStatus s) const {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [&](const CheckRow& r) { return r.check == check && r.status == s; }));
}

std::vector<GridPoint> random_points(std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
    std::vector<GridPoint> pts(samples);
    for (auto& g : pts) {
        g.model.epsilon = uniform(-50.0, 50.0);
        g.model.t = uniform(0.5, 30.0);
        g.model.bz = uniform(-40.0, 40.0);
        g.model.bx = uniform(1.0, 200.0);
        g.temperature = std::exp(uniform(std::log(0.05), std::log(50.0)));
    }
    return pts;
}

namespace {

constexpr double kOracleTol = 1e-8;

CheckStatus hard(double residual, double tol) {
    return std::isfinite(residual) && residual <= tol ? CheckStatus::ok : CheckStatus::failed;
}

CheckStatus soft(double residual, double tol) {
    return std::isfinite(residual) && residual <= tol ? CheckStatus::ok : CheckStatus::flagged;
}

}  // namespace

ValidationReport run_validation(std::size_t samples, std::uint64_t seed) {
    ValidationReport report;
    const auto points = random_points(samples, seed);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const GridPoint& g = points[i];
        auto add = [&](std::string check, double residual, CheckStatus status) {
            report.rows.push_back({std::move(check), i, g, residual, status});
        };

        const Mat4 h = build_hamiltonian(g.model);
        {
            auto closed = closed_form_levels(g.model);
            std::sort(closed.begin(), closed.end());
            const auto eig = eig_sym(h);
            double r = 0.0;
            for (std::size_t k = 0; k < 4; ++k) r = std::max(r, std::abs(closed[k] - eig.values[k]));
            r /= std::max(1.0, std::abs(closed[3]));
            add("energies", r, hard(r, 1e-9));
        }
        try {
            const auto coeffs = analytic_coeffs(g.model);
            double r = 0.0;
            for (const auto& c : coeffs.report) r = std::max(r, c.vector_residual);
            add("coefficients", r, soft(r, kOracleTol));
        } catch (const AnalyticUnavailable&) {
            add("coefficients", 0.0, CheckStatus::skipped);
        }

        const auto state = thermal_state(g.model, g.temperature);
        const Mat4& rho = state.rho;
        {
            const double r = std::abs(trace(rho) - 1.0);
            add("trace", r, hard(r, 1e-12));
        }
        {
            const double r = max_abs(rho - transpose(rho));
            add("symmetry", r, hard(r, kSymmetryTol));
        }
        {
            const double lo = eig_sym(rho).values[0];
            const double r = std::max(0.0, -lo);
            add("psd", r, hard(r, kPsdClamp));
        }
        {
            const double r = max_abs(h * rho - rho * h) / std::max(1.0, max_abs(h));
            add("commutation", r, hard(r, 1e-9));
        }

        const double c = concurrence(rho);
        const auto cf = concurrence_closed_form(rho);
        add("closed_form_concurrence", std::abs(cf.value - c), soft(std::abs(cf.value - c), kOracleTol));
        add("closed_form_concurrence_conj", std::abs(cf.conjugate_branch - c),
            soft(std::abs(cf.conjugate_branch - c), kOracleTol));

        {
            // Formula angle vs eigenvector diagonalization: compare the
            // rotated diagonals with the eigenvalues as sets.
            const auto angles = local_angles(rho);
            double r = 0.0;
            for (int side = 0; side < 2; ++side) {
                const Mat2 red = side == 0 ? reduce_a(rho) : reduce_b(rho);
                const double chi = side == 0 ? rho(0, 0) + rho(1, 1) - rho(2, 2) - rho(3, 3)
                                             : rho(0, 0) - rho(1, 1) + rho(2, 2) - rho(3, 3);
                const double off = side == 0 ? rho(0, 2) + rho(1, 3) : rho(0, 1) + rho(2, 3);
                const double theta =
                    std::abs(off) < 1e-12 ? 0.0 : std::atan((chi + std::sqrt(chi * chi + 4.0 * off * off)) / (2.0 * off));
                const Mat2 u = rotation(theta);
                const Mat2 rot = u * red * transpose(u);
                std::array<double, 2> d{rot(0, 0), rot(1, 1)};
                std::sort(d.begin(), d.end());
                const auto ev = eig_sym(red).values;
                r = std::max({r, std::abs(d[0] - ev[0]), std::abs(d[1] - ev[1]), std::abs(rot(0, 1))});
            }
            add("angle_formula", r, soft(r, kOracleTol));
            if (angles.fallback_a || angles.fallback_b) add("angle_fallback", 1.0, CheckStatus::flagged);
        }

        try {
            const auto cc = correlated_coherence_details(rho);
            const double r = std::max(cc.local_a, cc.local_b);
            add("rotation_diagonalization", r, hard(r, 2.0 * kDiagonalTol));
            add("ccc_nonnegative", std::max(0.0, -cc.value), hard(std::max(0.0, -cc.value), 1e-12));
        } catch (const InvariantViolation&) {
            add("rotation_diagonalization", 1.0, CheckStatus::failed);
        }
    }
    return report;
}

void write_report(std::ostream& os, const ValidationReport& report) {
    os << "check,sample,epsilon,t,bz,bx,T,residual,status\n";
    for (const auto& r : report.rows) {
        const auto& p = r.point;
        os << r.check << ',' << r.sample << ',' << format_number(p.model.epsilon) << ',' << format_number(p.model.t) << ','
           << format_number(p.model.bz) << ',' << format_number(p.model.bx) << ',' << format_number(p.temperature) << ','
           << format_number(r.residual) << ',' << to_string(r.status) << '\n';
    }
}

void write_summary(std::ostream& os, const ValidationReport& report) {
    std::map<std::string, std::array<std::size_t, 4>> counts;
    for (const auto& r : report.rows) ++counts[r.check][static_cast<std::size_t>(r.status)];
    os << "check                         ok  flagged skipped failed\n";
    for (const auto& [name, c] : counts) {
        std::string padded = name;
        padded.resize(28, ' ');
        os << padded << ' ' << c[0] << ' ' << c[1] << ' ' << c[2] << ' ' << c[3] << '\n';
    }
    os << (report.passed() ? "validate: PASS" : "validate: FAIL (hard invariant violated)") << '\n';
}

}  // namespace dqd
