// validate.hpp - oracle-equivalence report over seeded random thermal states
#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <dqd/sweep.hpp>

namespace dqd {

enum class CheckStatus { ok, flagged, skipped, failed };

std::string to_string(CheckStatus s);

struct CheckRow {
    std::string check;
    std::size_t sample = 0;
    GridPoint point;
    double residual = 0.0;
    CheckStatus status = CheckStatus::ok;
};

/// Hard checks (a failure makes the run fail): energies, trace, symmetry,
/// psd, commutation, rotation_diagonalization, ccc_nonnegative.
/// Soft checks (outliers are flagged and logged): coefficients,
/// closed_form_concurrence, closed_form_concurrence_conj, angle_formula.
struct ValidationReport {
    std::vector<CheckRow> rows;

    std::size_t count(CheckStatus s) const;
    std::size_t count(const std::string& check, CheckStatus s) const;
    bool passed() const { return count(CheckStatus::failed) == 0; }
};

/// Random parameters: epsilon in [-50, 50], t in [0.5, 30], bz in [-40, 40],
/// bx in [1, 200], T log-uniform in [0.05, 50]. Deterministic given seed.
std::vector<GridPoint> random_points(std::size_t samples, std::uint64_t seed);

ValidationReport run_validation(std::size_t samples, std::uint64_t seed);

/// One CSV row per check: check,sample,epsilon,t,bz,bx,T,residual,status
void write_report(std::ostream& os, const ValidationReport& report);
/// Per-check ok/flagged/skipped/failed counts.
void write_summary(std::ostream& os, const ValidationReport& report);

}  // namespace dqd
