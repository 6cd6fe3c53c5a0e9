// sweep.hpp - parameter grids over (epsilon, t, bz, bx, T) and per-point
// evaluation of the requested measures.
#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <dqd/model.hpp>

namespace dqd {

/// Bad grid, config file, flag or environment value.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Param { epsilon, t, bz, bx, temperature };
enum class Scale { linear, log };
enum class Measure { energies, populations, concurrence, concurrence_closed, fidelity_pure, l1, correlated_coherence };

Param parse_param(std::string_view name);
std::string param_name(Param p);
Measure parse_measure(std::string_view name);
std::string measure_name(Measure m);

struct Axis {
    Param param = Param::epsilon;
    double min = 0.0;
    double max = 1.0;
    std::size_t count = 2;
    Scale scale = Scale::linear;

    /// count values from min to max inclusive; geometric when scale == log.
    std::vector<double> values() const;
};

struct SweepGrid {
    std::map<Param, double> fixed;
    Axis axis1;
    std::optional<Axis> axis2;
    std::vector<Measure> measures;

    /// Throws ConfigError: count < 2, log axis with min <= 0, non-finite
    /// bounds, parameter both fixed and swept or swept twice, missing
    /// parameters, empty measure list, invalid physical values (t < 0, T <= 0).
    void validate() const;
};

struct GridPoint {
    ModelParams model;
    double temperature = 1.0;
};

/// One output row. `values` follows measure_columns(measures).
struct SweepRecord {
    GridPoint point;
    std::vector<double> values;
};

std::vector<std::string> measure_columns(const std::vector<Measure>& measures);

/// Row-major: axis1 is the outer loop, axis2 the inner one.
std::vector<GridPoint> grid_points(const SweepGrid& grid);

/// Pure function of the point. Throws InvariantViolation when a measure
/// leaves its documented range (e.g. negative correlated coherence).
SweepRecord evaluate_point(const GridPoint& point, const std::vector<Measure>& measures);

/// DQD_THREADS if set (positive integer, else ConfigError), otherwise the
/// hardware concurrency.
std::size_t worker_count();

/// Evaluates every grid point (in parallel when threads > 1) and hands the
/// records to `sink` in row-major order on the calling thread.
void run_sweep(const SweepGrid& grid, const std::function<void(const SweepRecord&)>& sink,
               std::size_t threads = worker_count());

std::vector<SweepRecord> run_sweep(const SweepGrid& grid, std::size_t threads = worker_count());

/// Evaluates f on a positive grid, takes the grid maximum, then refines by
/// golden section in log(x) across the two neighbouring cells (tol in log x).
struct Peak {
    double x = 0.0;
    double value = 0.0;
    std::size_t grid_index = 0;
};
Peak refine_peak_log(const std::function<double(double)>& f, const std::vector<double>& grid, double log_tol = 1e-8);

}  // namespace dqd
