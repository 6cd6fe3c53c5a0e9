#include <doctest.h>

#include <cmath>

#include <dqd/thermal.hpp>

#include "test_support.hpp"

using namespace dqd;
using dqd::test::max_diff;
using dqd::test::uniform;

namespace {

const ModelParams kReference{0.5, 7.0, 16.0, 100.0};

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * static_cast<double>(i) / static_cast<double>(n - 1));
    return v;
}

}  // namespace

TEST_CASE("thermal_state limits") {
    SUBCASE("infinite temperature") {
        const auto s = thermal_state({0.0, 7.0, 16.0, 100.0}, 1e6);
        for (double p : populations(s)) CHECK(std::abs(p - 0.25) <= 1e-5);
    }
    SUBCASE("zero temperature is the ground-state projector") {
        const ModelParams p{0.0, 7.0, 16.0, 100.0};
        const auto s = thermal_state(p, 1e-4);
        CHECK(trace(s.rho * s.rho) > 1.0 - 1e-8);
        const auto gs = eig_sym(build_hamiltonian(p));
        CHECK(max_diff(s.rho, outer(column(gs.vectors, 0))) <= 1e-10);
    }
    SUBCASE("extreme beta underflows gracefully") {
        const auto s = thermal_state({0.0, 7.0, 16.0, 100.0}, 1e-9);
        CHECK(std::isfinite(s.log_partition()));
        CHECK(trace(s.rho) == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("thermal_state rejects non-positive temperature") {
    CHECK_THROWS_AS(thermal_state(kReference, 0.0), ValidationError);
    CHECK_THROWS_AS(thermal_state(kReference, -1.0), ValidationError);
    CHECK_THROWS_AS(thermal_state(kReference, NAN), ValidationError);
    CHECK_THROWS_AS(thermal_state({0, -1.0, 0, 0}, 1.0), ValidationError);
}

TEST_CASE("thermal_state invariants on random parameters") {
    for (int k = 0; k < 200; ++k) {
        const ModelParams p{uniform(-100, 100), uniform(0, 50), uniform(-50, 50), uniform(-200, 200)};
        const double temp = std::exp(uniform(std::log(0.01), std::log(1e3)));
        const auto s = thermal_state(p, temp);
        const Mat4 h = build_hamiltonian(p);
        CHECK(std::abs(trace(s.rho) - 1.0) <= 1e-12);
        CHECK(max_diff(s.rho, transpose(s.rho)) <= 1e-12);
        CHECK(eig_sym(s.rho).values[0] >= -1e-12);
        CHECK(max_abs(h * s.rho - s.rho * h) <= 1e-9 * max_abs(h));
        CHECK_NOTHROW(require_density_matrix(s.rho, 1e-12));
    }
}

TEST_CASE("log partition function matches the direct sum") {
    const ModelParams p{1.0, 7.0, 16.0, 100.0};
    for (double temp : {5.0, 20.0, 100.0}) {
        const auto s = thermal_state(p, temp);
        double z = 0.0;
        for (double e : closed_form_levels(p)) z += std::exp(-e / temp);
        CHECK(s.log_partition() == doctest::Approx(std::log(z)).epsilon(1e-12));
    }
}

TEST_CASE("Gibbs state is invariant under a uniform energy shift") {
    const ModelParams p{1.0, 7.0, 16.0, 100.0};
    const Mat4 h = build_hamiltonian(p);
    for (double temp : {0.05, 1.0, 30.0}) {
        const auto ref = thermal_state(p, temp).rho;
        for (double c : {-1000.0, 1000.0}) {
            const Mat4 shifted = h + c * Mat4::identity();
            CHECK(max_diff(gibbs_state(shifted, temp), ref) <= 1e-10);
        }
    }
}

TEST_CASE("populations") {
    SUBCASE("high temperature is uniform") {
        for (double p : populations(thermal_state(kReference, 1e4))) CHECK(std::abs(p - 0.25) <= 1e-3);
    }
    SUBCASE("sum to one") {
        const auto p = populations(thermal_state(kReference, 3.0));
        CHECK(p[0] + p[1] + p[2] + p[3] == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("rho33 and rho22 cross only at the larger detuning") {
        auto crosses = [](double eps) {
            ModelParams p = kReference;
            p.epsilon = eps;
            int sign = 0;
            for (double temp : log_grid(0.01, 1e4, 400)) {
                const auto pop = populations(thermal_state(p, temp));
                const double d = pop[2] - pop[1];
                const int s = d > 0 ? 1 : (d < 0 ? -1 : 0);
                if (s != 0 && sign != 0 && s != sign) return true;
                if (s != 0) sign = s;
            }
            return false;
        };
        CHECK(crosses(2.0));
        CHECK_FALSE(crosses(0.5));
    }
    SUBCASE("detuning-only ground state sits on the right dot") {
        const auto p = populations(thermal_state({2.0, 0.0, 0.0, 0.0}, 1e-3));
        CHECK(p[2] + p[3] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(p[0] + p[1] <= 1e-12);
    }
}

TEST_CASE("reduced density matrices") {
    SUBCASE("product states factor back") {
        for (int k = 0; k < 50; ++k) {
            const Mat2 a = test::random_density<2>(), b = test::random_density<2>();
            const Mat4 rho = kron2(a, b);
            CHECK(max_diff(reduce_a(rho), a) <= 1e-15);
            CHECK(max_diff(reduce_b(rho), b) <= 1e-15);
        }
    }
    SUBCASE("maximally mixed") {
        const Mat4 mixed = 0.25 * Mat4::identity();
        CHECK(reduce_a(mixed) == 0.5 * Mat2::identity());
        CHECK(reduce_b(mixed) == 0.5 * Mat2::identity());
    }
    SUBCASE("thermal state agrees with index contraction") {
        const auto s = thermal_state({1.0, 7.0, 16.0, 100.0}, 1.0);
        CHECK(max_diff(reduce_a(s), test::partial_trace_b(s.rho)) <= 1e-12);
        CHECK(max_diff(reduce_b(s), test::partial_trace_a(s.rho)) <= 1e-12);
    }
    SUBCASE("unit trace and PSD") {
        for (int k = 0; k < 50; ++k) {
            const auto s = thermal_state({uniform(-20, 20), uniform(0, 20), uniform(-20, 20), uniform(0, 150)},
                                         uniform(0.05, 50));
            CHECK_NOTHROW(require_density_matrix(reduce_a(s), 1e-12));
            CHECK_NOTHROW(require_density_matrix(reduce_b(s), 1e-12));
        }
    }
}

TEST_CASE("mean energy is non-decreasing in temperature") {
    const ModelParams p{1.0, 7.0, 16.0, 100.0};
    const Mat4 h = build_hamiltonian(p);
    double prev = -INFINITY;
    for (double temp : log_grid(0.1, 1000.0, 10)) {
        const double e = trace(thermal_state(p, temp).rho * h);
        CHECK(e >= prev - 1e-10);
        prev = e;
    }
}

TEST_CASE("Gibbs state factorizes without transverse field") {
    for (double eps : {-10.0, 0.0, 1.0, 7.0}) {
        for (double temp : {0.05, 0.5, 5.0, 50.0}) {
            const auto s = thermal_state({eps, 7.0, 16.0, 0.0}, temp);
            CHECK(max_diff(s.rho, kron2(reduce_a(s), reduce_b(s))) <= 1e-10);
        }
    }
}

TEST_CASE("require_density_matrix") {
    CHECK_NOTHROW(require_density_matrix(0.25 * Mat4::identity()));
    CHECK_THROWS_AS(require_density_matrix(Mat4::identity()), ValidationError);
    CHECK_THROWS_AS(require_density_matrix(Mat2::diag({1.5, -0.5})), NotPsdError);
    Mat2 asym = 0.5 * Mat2::identity();
    asym(0, 1) = 0.1;
    CHECK_THROWS_AS(require_density_matrix(asym), ValidationError);
}
