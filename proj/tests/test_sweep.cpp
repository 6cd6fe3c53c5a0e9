#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <random>
#include <sstream>

#include <dqd/correlations.hpp>
#include <dqd/csv.hpp>
#include <dqd/sweep.hpp>
#include <dqd/sweep_config.hpp>

using namespace dqd;

namespace {

SweepGrid small_grid() {
    SweepGrid g;
    g.fixed = {{Param::t, 7.0}, {Param::bz, 16.0}, {Param::bx, 100.0}};
    g.axis1 = Axis{Param::epsilon, -5.0, 5.0, 7, Scale::linear};
    g.axis2 = Axis{Param::temperature, 0.1, 20.0, 5, Scale::log};
    g.measures = {Measure::energies, Measure::populations, Measure::concurrence, Measure::fidelity_pure,
                  Measure::l1, Measure::correlated_coherence};
    return g;
}

std::string to_csv(const std::vector<SweepRecord>& records, const std::vector<Measure>& measures) {
    std::ostringstream os;
    CsvWriter csv(os);
    csv.header(record_columns(measures));
    for (const auto& r : records) csv.row(record_row(r));
    return os.str();
}

SweepGrid parse(const std::string& text) {
    std::istringstream in(text);
    return parse_sweep_config(in);
}

const char* kBaseConfig = R"(# detuning sweep
[fixed]
t = 7
bz = 16
bx = 100
T = 0.5
[axis1]
param = epsilon
min = -2
max = 2
count = 5
[output]
measures = concurrence, correlated_coherence
)";

}  // namespace

TEST_CASE("Axis values") {
    SUBCASE("linear endpoints and spacing") {
        const auto v = Axis{Param::epsilon, -1.0, 1.0, 5, Scale::linear}.values();
        REQUIRE(v.size() == 5);
        CHECK(v.front() == -1.0);
        CHECK(v.back() == 1.0);
        CHECK(v[2] == doctest::Approx(0.0));
        for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] - v[i - 1] == doctest::Approx(0.5));
    }
    SUBCASE("log is geometric") {
        const auto v = Axis{Param::temperature, 0.01, 100.0, 5, Scale::log}.values();
        CHECK(v.front() == 0.01);
        CHECK(v.back() == 100.0);
        for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] / v[i - 1] == doctest::Approx(10.0));
    }
    SUBCASE("descending axis") {
        const auto v = Axis{Param::bx, 3.0, 1.0, 3, Scale::linear}.values();
        CHECK(v == std::vector<double>{3.0, 2.0, 1.0});
    }
}

TEST_CASE("SweepGrid validation rejects bad grids") {
    auto expect_bad = [](const std::function<void(SweepGrid&)>& mutate) {
        SweepGrid g = small_grid();
        mutate(g);
        CHECK_THROWS_AS(g.validate(), ConfigError);
    };
    CHECK_NOTHROW(small_grid().validate());
    expect_bad([](SweepGrid& g) { g.axis1.count = 1; });
    expect_bad([](SweepGrid& g) { g.axis2->min = 0.0; });
    expect_bad([](SweepGrid& g) { g.axis1.max = NAN; });
    expect_bad([](SweepGrid& g) { g.fixed[Param::epsilon] = 1.0; });
    expect_bad([](SweepGrid& g) { g.fixed.erase(Param::bz); });
    expect_bad([](SweepGrid& g) { g.axis2->param = Param::epsilon; });
    expect_bad([](SweepGrid& g) { g.measures.clear(); });
    expect_bad([](SweepGrid& g) { g.fixed[Param::t] = -1.0; });
    expect_bad([](SweepGrid& g) { g.axis2 = Axis{Param::temperature, -1.0, 2.0, 3, Scale::linear}; });
    expect_bad([](SweepGrid& g) { g.fixed[Param::bx] = INFINITY; });
}

TEST_CASE("grid_points is row-major with axis1 outermost") {
    const auto g = small_grid();
    const auto pts = grid_points(g);
    const auto e = g.axis1.values();
    const auto T = g.axis2->values();
    REQUIRE(pts.size() == e.size() * T.size());
    for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = 0; j < T.size(); ++j) {
            const auto& p = pts[i * T.size() + j];
            CHECK(p.model.epsilon == e[i]);
            CHECK(p.temperature == T[j]);
            CHECK(p.model.t == 7.0);
            CHECK(p.model.bz == 16.0);
            CHECK(p.model.bx == 100.0);
        }
}

TEST_CASE("measure columns follow the requested order") {
    CHECK(measure_columns({Measure::correlated_coherence, Measure::concurrence}) == std::vector<std::string>{"Ccc", "C"});
    const auto cols = record_columns({Measure::populations});
    CHECK(cols == std::vector<std::string>{"epsilon", "t", "bz", "bx", "T", "rho11", "rho22", "rho33", "rho44"});
    for (Measure m : {Measure::energies, Measure::populations, Measure::concurrence, Measure::concurrence_closed,
                      Measure::fidelity_pure, Measure::l1, Measure::correlated_coherence})
        CHECK(parse_measure(measure_name(m)) == m);
    for (Param p : {Param::epsilon, Param::t, Param::bz, Param::bx, Param::temperature}) CHECK(parse_param(param_name(p)) == p);
    CHECK_THROWS_AS(parse_measure("entropy"), ConfigError);
    CHECK_THROWS_AS(parse_param("Bx"), ConfigError);
}

TEST_CASE("evaluate_point is a pure function of the point") {
    const auto g = small_grid();
    const auto pts = grid_points(g);
    std::vector<SweepRecord> in_order;
    for (const auto& p : pts) in_order.push_back(evaluate_point(p, g.measures));

    std::vector<std::size_t> perm(pts.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), std::mt19937_64(7));
    for (std::size_t k : perm) {
        const auto r = evaluate_point(pts[k], g.measures);
        CHECK(r.values == in_order[k].values);
    }
    CHECK(in_order.front().values.size() == measure_columns(g.measures).size());
}

TEST_CASE("evaluate_point matches the direct computation") {
    const GridPoint p{{1.0, 7.0, 16.0, 100.0}, 0.3};
    const auto r = evaluate_point(p, {Measure::concurrence, Measure::correlated_coherence, Measure::l1});
    const auto rho = thermal_state(p.model, p.temperature).rho;
    CHECK(r.values[0] == concurrence(rho));
    CHECK(r.values[1] == correlated_coherence(rho));
    CHECK(r.values[2] == l1_coherence(rho));
}

TEST_CASE("run_sweep output is independent of the thread count") {
    const auto g = small_grid();
    const auto one = to_csv(run_sweep(g, 1), g.measures);
    const auto four = to_csv(run_sweep(g, 4), g.measures);
    const auto many = to_csv(run_sweep(g, 64), g.measures);
    CHECK(one == four);
    CHECK(one == many);

    SUBCASE("sink sees records in row-major order") {
        const auto pts = grid_points(g);
        std::size_t i = 0;
        run_sweep(g, [&](const SweepRecord& r) {
            CHECK(r.point.model.epsilon == pts[i].model.epsilon);
            CHECK(r.point.temperature == pts[i].temperature);
            ++i;
        }, 3);
        CHECK(i == pts.size());
    }
}

TEST_CASE("run_sweep spans several chunks") {
    SweepGrid g;
    g.fixed = {{Param::t, 7.0}, {Param::bz, 16.0}, {Param::epsilon, 0.5}};
    g.axis1 = Axis{Param::bx, 0.0, 200.0, 101, Scale::linear};
    g.axis2 = Axis{Param::temperature, 0.05, 50.0, 90, Scale::log};
    g.measures = {Measure::populations};
    const auto serial = run_sweep(g, 1);
    const auto parallel = run_sweep(g, 3);
    REQUIRE(serial.size() == 101 * 90);
    REQUIRE(parallel.size() == serial.size());
    bool same = true;
    for (std::size_t i = 0; i < serial.size(); ++i) same = same && serial[i].values == parallel[i].values;
    CHECK(same);
}

TEST_CASE("run_sweep handles extremely low temperatures") {
    SweepGrid g = small_grid();
    g.axis2 = Axis{Param::temperature, 1e-300, 1e-299, 3, Scale::log};
    for (const auto& r : run_sweep(g, 2))
        for (double v : r.values) CHECK(std::isfinite(v));
}

TEST_CASE("worker_count reads DQD_THREADS") {
    ::setenv("DQD_THREADS", "3", 1);
    CHECK(worker_count() == 3);
    ::setenv("DQD_THREADS", "0", 1);
    CHECK_THROWS_AS(worker_count(), ConfigError);
    ::setenv("DQD_THREADS", "two", 1);
    CHECK_THROWS_AS(worker_count(), ConfigError);
    ::setenv("DQD_THREADS", "4x", 1);
    CHECK_THROWS_AS(worker_count(), ConfigError);
    ::unsetenv("DQD_THREADS");
    CHECK(worker_count() >= 1);
}

TEST_CASE("format_number is byte stable") {
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(0.25) == "0.25");
    CHECK(format_number(-2.5) == "-2.5");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(123456789.123456) == "123456789.123");
    CHECK(format_number(1e-20) == "1e-20");
    CHECK(format_number(6.02214076e23) == "6.02214076e+23");
    CHECK(format_number(100.0) == "100");

    std::ostringstream os;
    CsvWriter csv(os);
    csv.header({"a", "b"});
    const std::vector<double> row{1.5, -0.0};
    csv.row(row);
    CHECK(os.str() == "a,b\n1.5,0\n");
}

TEST_CASE("sweep config parsing") {
    SUBCASE("minimal config") {
        const auto g = parse(kBaseConfig);
        CHECK(g.fixed.at(Param::t) == 7.0);
        CHECK(g.fixed.at(Param::temperature) == 0.5);
        CHECK(g.axis1.param == Param::epsilon);
        CHECK(g.axis1.count == 5);
        CHECK(g.axis1.scale == Scale::linear);
        CHECK_FALSE(g.axis2.has_value());
        CHECK(g.measures == std::vector<Measure>{Measure::concurrence, Measure::correlated_coherence});
    }
    SUBCASE("two axes, log scale, trailing comments") {
        const auto g = parse(R"(
[fixed]
t = 7      # tunneling
bz = 16
epsilon = 1
[axis1]
param = bx
min = 0
max = 200
count = 11
[axis2]
param = T
min = 0.1
max = 30
count = 4
scale = log
[output]
measures = concurrence
)");
        REQUIRE(g.axis2.has_value());
        CHECK(g.axis2->param == Param::temperature);
        CHECK(g.axis2->scale == Scale::log);
        CHECK(grid_points(g).size() == 44);
    }
    SUBCASE("errors") {
        auto bad = [](std::string text) { CHECK_THROWS_AS(parse(text), ConfigError); };
        auto replace = [](std::string s, const std::string& from, const std::string& to) {
            s.replace(s.find(from), from.size(), to);
            return s;
        };
        const std::string base = kBaseConfig;
        bad(replace(base, "count = 5", "count = five"));
        bad(replace(base, "count = 5", "count = 1"));
        bad(replace(base, "min = -2", "min = -2x"));
        bad(replace(base, "[fixed]", "[constants]"));
        bad(replace(base, "bz = 16", "bz 16"));
        bad(replace(base, "bz = 16", "gamma = 16"));
        bad(replace(base, "bz = 16", "bz = 16\nbz = 17"));
        bad(replace(base, "param = epsilon", "param = eps"));
        bad(replace(base, "max = 2\n", ""));
        bad(replace(base, "concurrence, correlated_coherence", "concurrence,,l1"));
        bad(replace(base, "concurrence, correlated_coherence", "negativity"));
        bad(replace(base, "T = 0.5", "T = 0"));
        bad(replace(base, "T = 0.5", "epsilon = 0.5"));
        bad("t = 1\n" + base);
        bad("[fixed]\nt = 7\nbz = 16\nbx = 1\nT = 1\nepsilon = 0\n[output]\nmeasures = l1\n");
        bad(replace(base, "count = 5", "count = 5\nscale = cubic"));
    }
    SUBCASE("error messages carry line numbers") {
        std::string text = kBaseConfig;
        text.replace(text.find("count = 5"), 9, "count = x");
        try {
            parse(text);
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("line 11") != std::string::npos);
        }
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_sweep_config("/nonexistent/dir/sweep.cfg"), ConfigError);
    }
}

TEST_CASE("refine_peak_log") {
    SUBCASE("recovers the maximum of a smooth peak between grid points") {
        const double x0 = 6.01;
        auto f = [x0](double x) {
            const double s = std::log(x / x0);
            return 1.0 - s * s;
        };
        const auto grid = Axis{Param::temperature, 0.01, 100.0, 40, Scale::log}.values();
        const auto peak = refine_peak_log(f, grid);
        CHECK(std::abs(peak.x / x0 - 1.0) < 1e-6);
        CHECK(peak.value == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(grid[peak.grid_index] <= x0 * 1.3);
        CHECK(grid[peak.grid_index] >= x0 / 1.3);
    }
    SUBCASE("edge maximum stays in the first cell") {
        const auto grid = Axis{Param::temperature, 1.0, 10.0, 10, Scale::log}.values();
        const auto peak = refine_peak_log([](double x) { return -x; }, grid);
        CHECK(peak.grid_index == 0);
        CHECK(peak.x == doctest::Approx(1.0).epsilon(1e-6));
    }
    SUBCASE("bad grids") {
        CHECK_THROWS_AS(refine_peak_log([](double) { return 0.0; }, {1.0}), ConfigError);
        CHECK_THROWS_AS(refine_peak_log([](double) { return 0.0; }, {0.0, 1.0}), ConfigError);
    }
}
