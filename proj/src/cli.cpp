// cli.cpp
#include <dqd/cli.hpp>

#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include <dqd/correlations.hpp>
#include <dqd/csv.hpp>
#include <dqd/sweep.hpp>
#include <dqd/sweep_config.hpp>
#include <dqd/validate.hpp>

namespace dqd {

namespace {

struct ModelFlags {
    double eps = 0.0;
    double t = 7.0;
    double bz = 16.0;
    double bx = 100.0;
};

struct TemperatureAxis {
    double min = 0.01;
    double max = 100.0;
    std::size_t n = 400;
    bool log = false;
};

void add_model_flags(CLI::App* cmd, ModelFlags& m, bool with_eps) {
    if (with_eps) cmd->add_option("--eps", m.eps, "inter-dot detuning")->capture_default_str();
    cmd->add_option("--t", m.t, "tunneling amplitude")->capture_default_str();
    cmd->add_option("--bz", m.bz, "longitudinal field")->capture_default_str();
    cmd->add_option("--bx", m.bx, "transverse field gradient")->capture_default_str();
}

void add_temperature_axis(CLI::App* cmd, TemperatureAxis& a) {
    cmd->add_option("--t-min", a.min, "lowest temperature")->capture_default_str();
    cmd->add_option("--t-max", a.max, "highest temperature")->capture_default_str();
    cmd->add_option("--n", a.n, "number of temperatures")->capture_default_str();
    cmd->add_flag("--log", a.log, "logarithmic temperature grid");
}

Axis temperature_axis(const TemperatureAxis& a) {
    return Axis{Param::temperature, a.min, a.max, a.n, a.log ? Scale::log : Scale::linear};
}

std::map<Param, double> fixed_model(const ModelFlags& m, bool with_eps) {
    std::map<Param, double> f{{Param::t, m.t}, {Param::bz, m.bz}, {Param::bx, m.bx}};
    if (with_eps) f[Param::epsilon] = m.eps;
    return f;
}

double param_value(const GridPoint& g, Param p) {
    switch (p) {
        case Param::epsilon: return g.model.epsilon;
        case Param::t: return g.model.t;
        case Param::bz: return g.model.bz;
        case Param::bx: return g.model.bx;
        case Param::temperature: return g.temperature;
    }
    return 0.0;
}

/// Writes the chosen parameter columns followed by every measure column.
void emit(const SweepGrid& grid, const std::vector<std::pair<Param, std::string>>& params, std::ostream& os) {
    grid.validate();
    std::vector<std::string> header;
    for (const auto& [p, name] : params) header.push_back(name);
    const auto mcols = measure_columns(grid.measures);
    header.insert(header.end(), mcols.begin(), mcols.end());

    CsvWriter csv(os);
    csv.header(header);
    std::vector<double> row;
    run_sweep(grid, [&](const SweepRecord& r) {
        row.clear();
        for (const auto& [p, name] : params) row.push_back(param_value(r.point, p));
        row.insert(row.end(), r.values.begin(), r.values.end());
        csv.row(row);
    });
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Thermal quantum correlations of a single electron in a double quantum dot", "dqd"};
    app.require_subcommand(1);
    std::string out_path;
    app.add_option("--out", out_path, "write CSV to this file instead of stdout");

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "closed-form energies E1..E4 versus detuning");
    ModelFlags spec_m;
    double eps_min = -200.0, eps_max = 200.0;
    std::size_t eps_n = 801;
    add_model_flags(spectrum, spec_m, false);
    spectrum->add_option("--eps-min", eps_min)->capture_default_str();
    spectrum->add_option("--eps-max", eps_max)->capture_default_str();
    spectrum->add_option("--n", eps_n)->capture_default_str();

    // populations / fidelity / coherence share the temperature sweep shape
    ModelFlags pop_m, fid_m, coh_m;
    TemperatureAxis pop_a, fid_a, coh_a;
    auto* pops = app.add_subcommand("populations", "diagonal of the thermal state versus temperature");
    add_model_flags(pops, pop_m, true);
    add_temperature_axis(pops, pop_a);
    auto* fid = app.add_subcommand("fidelity", "ground-state fidelity <gs|rho(T)|gs> versus temperature");
    add_model_flags(fid, fid_m, true);
    add_temperature_axis(fid, fid_a);
    auto* coh = app.add_subcommand("coherence", "concurrence and correlated coherence versus temperature");
    add_model_flags(coh, coh_m, true);
    add_temperature_axis(coh, coh_a);

    // concurrence-map
    auto* cmap = app.add_subcommand("concurrence-map", "concurrence over Bx and either T or eps");
    ModelFlags map_m;
    double temp = 0.2;
    double bx_min = 0.0, bx_max = 200.0;
    std::size_t nx = 201;
    std::string y_name = "T";
    double y_min = 0.1, y_max = 30.0;
    std::size_t ny = 100;
    bool log_y = false;
    map_m.eps = 1.0;
    cmap->add_option("--eps", map_m.eps, "detuning (when the y axis is T)")->capture_default_str();
    cmap->add_option("--t", map_m.t)->capture_default_str();
    cmap->add_option("--bz", map_m.bz)->capture_default_str();
    cmap->add_option("--temp", temp, "temperature (when the y axis is eps)")->capture_default_str();
    cmap->add_option("--bx-min", bx_min)->capture_default_str();
    cmap->add_option("--bx-max", bx_max)->capture_default_str();
    cmap->add_option("--nx", nx)->capture_default_str();
    cmap->add_option("--y", y_name, "second axis: T or eps")->check(CLI::IsMember({"T", "eps"}))->capture_default_str();
    cmap->add_option("--y-min", y_min)->capture_default_str();
    cmap->add_option("--y-max", y_max)->capture_default_str();
    cmap->add_option("--ny", ny)->capture_default_str();
    cmap->add_flag("--log-y", log_y, "logarithmic second axis");

    // validate
    auto* val = app.add_subcommand("validate", "oracle-equivalence report on seeded random thermal states");
    std::size_t samples = 200;
    std::uint64_t seed = 42;
    val->add_option("--samples", samples)->capture_default_str();
    val->add_option("--seed", seed)->capture_default_str();

    // sweep
    auto* sweep = app.add_subcommand("sweep", "run a sweep described by a key=value config file");
    std::string config_path;
    sweep->add_option("--config", config_path, "sweep config file")->required();

    for (auto* sub : app.get_subcommands({}))
        sub->add_option("--out", out_path, "write CSV to this file instead of stdout");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const auto parsed = app.get_subcommands();
        out << (parsed.empty() ? app.help() : parsed.front()->help());
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "dqd: " << e.what() << '\n';
        return kExitUsage;
    }

    std::unique_ptr<std::ofstream> file;
    std::ostream* os = &out;
    if (!out_path.empty()) {
        file = std::make_unique<std::ofstream>(out_path, std::ios::binary);
        if (!*file) {
            err << "dqd: cannot open " << out_path << " for writing\n";
            return kExitUsage;
        }
        os = file.get();
    }

    try {
        if (*spectrum) {
            SweepGrid g;
            g.fixed = fixed_model(spec_m, false);
            g.fixed[Param::temperature] = 1.0;
            g.axis1 = Axis{Param::epsilon, eps_min, eps_max, eps_n, Scale::linear};
            g.measures = {Measure::energies};
            emit(g, {{Param::epsilon, "eps"}}, *os);
        } else if (*pops || *fid || *coh) {
            const bool is_pop = pops->parsed(), is_fid = fid->parsed();
            const ModelFlags& m = is_pop ? pop_m : is_fid ? fid_m : coh_m;
            const TemperatureAxis& a = is_pop ? pop_a : is_fid ? fid_a : coh_a;
            SweepGrid g;
            g.fixed = fixed_model(m, true);
            g.axis1 = temperature_axis(a);
            if (is_pop) g.measures = {Measure::populations};
            else if (is_fid) g.measures = {Measure::fidelity_pure};
            else g.measures = {Measure::concurrence, Measure::correlated_coherence};
            emit(g, {{Param::temperature, "T"}}, *os);
        } else if (*cmap) {
            SweepGrid g;
            g.fixed = {{Param::t, map_m.t}, {Param::bz, map_m.bz}};
            g.axis1 = Axis{Param::bx, bx_min, bx_max, nx, Scale::linear};
            const Param y = y_name == "T" ? Param::temperature : Param::epsilon;
            if (y == Param::temperature) g.fixed[Param::epsilon] = map_m.eps;
            else g.fixed[Param::temperature] = temp;
            g.axis2 = Axis{y, y_min, y_max, ny, log_y ? Scale::log : Scale::linear};
            g.measures = {Measure::concurrence};
            emit(g, {{Param::bx, "bx"}, {y, y == Param::temperature ? "T" : "eps"}}, *os);
        } else if (*val) {
            const auto report = run_validation(samples, seed);
            write_report(*os, report);
            write_summary(err, report);
            return report.passed() ? kExitOk : kExitInvariant;
        } else if (*sweep) {
            const auto g = load_sweep_config(config_path);
            emit(g,
                 {{Param::epsilon, "epsilon"}, {Param::t, "t"}, {Param::bz, "bz"}, {Param::bx, "bx"}, {Param::temperature, "T"}},
                 *os);
        }
    } catch (const ConfigError& e) {
        err << "dqd: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ValidationError& e) {
        err << "dqd: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvariantViolation& e) {
        err << "dqd: invariant violated: " << e.what() << '\n';
        return kExitInvariant;
    }
    os->flush();
    return kExitOk;
}

int cli_main(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args, std::cout, std::cerr);
}

}  // namespace dqd
