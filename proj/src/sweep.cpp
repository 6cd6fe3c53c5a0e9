// sweep.cpp
#include <dqd/sweep.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include <dqd/correlations.hpp>
#include <dqd/search.hpp>
#include <dqd/thermal.hpp>

namespace dqd {

namespace {

constexpr std::array<std::pair<Param, std::string_view>, 5> kParamNames{{
    {Param::epsilon, "epsilon"},
    {Param::t, "t"},
    {Param::bz, "bz"},
    {Param::bx, "bx"},
    {Param::temperature, "T"},
}};

constexpr std::array<std::pair<Measure, std::string_view>, 7> kMeasureNames{{
    {Measure::energies, "energies"},
    {Measure::populations, "populations"},
    {Measure::concurrence, "concurrence"},
    {Measure::concurrence_closed, "concurrence_closed"},
    {Measure::fidelity_pure, "fidelity_pure"},
    {Measure::l1, "l1"},
    {Measure::correlated_coherence, "correlated_coherence"},
}};

}  // namespace

Param parse_param(std::string_view name) {
    for (const auto& [p, n] : kParamNames)
        if (n == name) return p;
    throw ConfigError("unknown parameter '" + std::string(name) + "' (expected epsilon, t, bz, bx or T)");
}

std::string param_name(Param p) {
    for (const auto& [q, n] : kParamNames)
        if (q == p) return std::string(n);
    return "?";
}

Measure parse_measure(std::string_view name) {
    for (const auto& [m, n] : kMeasureNames)
        if (n == name) return m;
    throw ConfigError("unknown measure '" + std::string(name) + "'");
}

std::string measure_name(Measure m) {
    for (const auto& [q, n] : kMeasureNames)
        if (q == m) return std::string(n);
    return "?";
}

std::vector<double> Axis::values() const {
    std::vector<double> v(count);
    const double span = static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        const double f = static_cast<double>(i) / span;
        if (scale == Scale::log)
            v[i] = std::exp(std::log(min) + f * (std::log(max) - std::log(min)));
        else
            v[i] = min + f * (max - min);
    }
    v.front() = min;
    v.back() = max;
    return v;
}

void SweepGrid::validate() const {
    auto check_axis = [](const Axis& a) {
        if (a.count < 2) throw ConfigError("axis " + param_name(a.param) + ": count must be >= 2");
        if (!std::isfinite(a.min) || !std::isfinite(a.max)) throw ConfigError("axis " + param_name(a.param) + ": non-finite bound");
        if (a.scale == Scale::log && (a.min <= 0.0 || a.max <= 0.0))
            throw ConfigError("axis " + param_name(a.param) + ": log scale needs positive bounds");
        const double lo = std::min(a.min, a.max);
        if (a.param == Param::t && lo < 0.0) throw ConfigError("axis t: tunneling must be >= 0");
        if (a.param == Param::temperature && lo <= 0.0) throw ConfigError("axis T: temperature must be > 0");
    };
    check_axis(axis1);
    if (axis2) {
        check_axis(*axis2);
        if (axis2->param == axis1.param) throw ConfigError("axis1 and axis2 sweep the same parameter");
    }
    for (const auto& [p, v] : fixed) {
        if (!std::isfinite(v)) throw ConfigError("fixed " + param_name(p) + ": non-finite");
        if (p == axis1.param || (axis2 && p == axis2->param))
            throw ConfigError("parameter " + param_name(p) + " is both fixed and swept");
    }
    for (const auto& [p, n] : kParamNames) {
        const bool swept = p == axis1.param || (axis2 && p == axis2->param);
        if (!swept && !fixed.contains(p)) throw ConfigError("parameter " + std::string(n) + " is neither fixed nor swept");
    }
    if (fixed.contains(Param::t) && fixed.at(Param::t) < 0.0) throw ConfigError("fixed t must be >= 0");
    if (fixed.contains(Param::temperature) && fixed.at(Param::temperature) <= 0.0) throw ConfigError("fixed T must be > 0");
    if (measures.empty()) throw ConfigError("no measures requested");
}

std::vector<std::string> measure_columns(const std::vector<Measure>& measures) {
    std::vector<std::string> cols;
    for (Measure m : measures) {
        switch (m) {
            case Measure::energies: cols.insert(cols.end(), {"E1", "E2", "E3", "E4"}); break;
            case Measure::populations: cols.insert(cols.end(), {"rho11", "rho22", "rho33", "rho44"}); break;
            case Measure::concurrence: cols.push_back("C"); break;
            case Measure::concurrence_closed:
                cols.insert(cols.end(), {"C_closed", "C_closed_conj", "C_closed_residual"});
                break;
            case Measure::fidelity_pure: cols.push_back("F"); break;
            case Measure::l1: cols.push_back("l1"); break;
            case Measure::correlated_coherence: cols.push_back("Ccc"); break;
        }
    }
    return cols;
}

namespace {

void set_param(GridPoint& g, Param p, double v) {
    switch (p) {
        case Param::epsilon: g.model.epsilon = v; break;
        case Param::t: g.model.t = v; break;
        case Param::bz: g.model.bz = v; break;
        case Param::bx: g.model.bx = v; break;
        case Param::temperature: g.temperature = v; break;
    }
}

void require_range(double v, double lo, double hi, const char* what) {
    constexpr double slack = 1e-12;
    if (!std::isfinite(v) || v < lo - slack || v > hi + slack)
        throw InvariantViolation(std::string(what) + " out of range: " + std::to_string(v));
}

}  // namespace

std::vector<GridPoint> grid_points(const SweepGrid& grid) {
    grid.validate();
    GridPoint base;
    for (const auto& [p, v] : grid.fixed) set_param(base, p, v);
    const auto v1 = grid.axis1.values();
    const auto v2 = grid.axis2 ? grid.axis2->values() : std::vector<double>{};

    std::vector<GridPoint> pts;
    pts.reserve(v1.size() * std::max<std::size_t>(1, v2.size()));
    for (double x : v1) {
        GridPoint g = base;
        set_param(g, grid.axis1.param, x);
        if (!grid.axis2) {
            pts.push_back(g);
            continue;
        }
        for (double y : v2) {
            set_param(g, grid.axis2->param, y);
            pts.push_back(g);
        }
    }
    return pts;
}

SweepRecord evaluate_point(const GridPoint& point, const std::vector<Measure>& measures) {
    SweepRecord rec;
    rec.point = point;

    std::optional<ThermalState> state;
    auto thermal = [&]() -> const ThermalState& {
        if (!state) state = thermal_state(point.model, point.temperature);
        return *state;
    };
    std::optional<double> wootters;
    auto conc = [&] {
        if (!wootters) wootters = concurrence(thermal().rho);
        return *wootters;
    };

    auto& out = rec.values;
    for (Measure m : measures) {
        switch (m) {
            case Measure::energies: {
                const auto e = closed_form_levels(point.model);
                out.insert(out.end(), e.begin(), e.end());
                break;
            }
            case Measure::populations: {
                const auto p = populations(thermal());
                for (double x : p) require_range(x, 0.0, 1.0, "population");
                out.insert(out.end(), p.begin(), p.end());
                break;
            }
            case Measure::concurrence:
                out.push_back(conc());
                break;
            case Measure::concurrence_closed: {
                const auto cf = concurrence_closed_form(thermal().rho);
                out.push_back(cf.value);
                out.push_back(cf.conjugate_branch);
                out.push_back(std::abs(cf.value - conc()));
                break;
            }
            case Measure::fidelity_pure: {
                const auto gs = ground_state(point.model);
                out.push_back(fidelity_pure(gs.vector, thermal().rho));
                break;
            }
            case Measure::l1:
                out.push_back(l1_coherence(thermal().rho));
                break;
            case Measure::correlated_coherence: {
                const double c = correlated_coherence(thermal().rho);
                require_range(c, 0.0, 3.0, "correlated coherence");
                out.push_back(c);
                break;
            }
        }
    }
    for (double v : out)
        if (!std::isfinite(v)) throw InvariantViolation("non-finite measure value");
    return rec;
}

std::size_t worker_count() {
    if (const char* env = std::getenv("DQD_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || n <= 0) throw ConfigError("DQD_THREADS must be a positive integer");
        return static_cast<std::size_t>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void run_sweep(const SweepGrid& grid, const std::function<void(const SweepRecord&)>& sink, std::size_t threads) {
    const auto points = grid_points(grid);
    threads = std::max<std::size_t>(1, threads);
    constexpr std::size_t chunk = 4096;

    std::vector<SweepRecord> buffer;
    for (std::size_t begin = 0; begin < points.size(); begin += chunk) {
        const std::size_t end = std::min(points.size(), begin + chunk);
        buffer.assign(end - begin, SweepRecord{});

        std::atomic<std::size_t> next{begin};
        std::exception_ptr failure;
        std::atomic<bool> failed{false};
        auto work = [&] {
            for (std::size_t i = next++; i < end && !failed; i = next++) {
                try {
                    buffer[i - begin] = evaluate_point(points[i], grid.measures);
                } catch (...) {
                    if (!failed.exchange(true)) failure = std::current_exception();
                }
            }
        };

        const std::size_t n_workers = std::min(threads, end - begin);
        if (n_workers <= 1) {
            work();
        } else {
            std::vector<std::jthread> pool;
            pool.reserve(n_workers);
            for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(work);
        }
        if (failure) std::rethrow_exception(failure);
        for (const auto& r : buffer) sink(r);
    }
}

std::vector<SweepRecord> run_sweep(const SweepGrid& grid, std::size_t threads) {
    std::vector<SweepRecord> out;
    run_sweep(grid, [&out](const SweepRecord& r) { out.push_back(r); }, threads);
    return out;
}

Peak refine_peak_log(const std::function<double(double)>& f, const std::vector<double>& grid, double log_tol) {
    if (grid.size() < 2) throw ConfigError("refine_peak_log: need at least two grid points");
    for (double x : grid)
        if (!(x > 0.0)) throw ConfigError("refine_peak_log: grid must be positive");

    Peak best;
    best.value = f(grid[0]);
    best.x = grid[0];
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double v = f(grid[i]);
        if (v > best.value) {
            best = {grid[i], v, i};
        }
    }
    const std::size_t lo = best.grid_index == 0 ? 0 : best.grid_index - 1;
    const std::size_t hi = std::min(grid.size() - 1, best.grid_index + 1);
    const auto [u, fu] = golden_section_maximize([&f](double s) { return f(std::exp(s)); }, std::log(grid[lo]),
                                                 std::log(grid[hi]), log_tol);
    if (fu >= best.value) {
        best.x = std::exp(u);
        best.value = fu;
    }
    return best;
}

}  // namespace dqd
