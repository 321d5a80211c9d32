#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "maglev/csv.hpp"
#include "maglev/errors.hpp"
#include "maglev/scenario.hpp"
#include "maglev/simulator.hpp"

using namespace maglev;
namespace fs = std::filesystem;

namespace {

constexpr int kExitAbort = 2;

struct CommonFlags {
    std::string config;
    std::string scenario;
    std::string mode;
    std::optional<double> gamma, eta, duration, dt;
    std::optional<int> decimate;
    bool log_delta_u = false;
    std::string out = "out";
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config, "key = value scenario file")->check(CLI::ExistingFile);
    cmd->add_option("--scenario", f.scenario, "reference class")->check(CLI::IsMember({"sin", "steps"}));
    cmd->add_option("--mode", f.mode, "controller")->check(CLI::IsMember({"full-state", "sensorless"}));
    cmd->add_option("--gamma", f.gamma, "DREM adaptation gain");
    cmd->add_option("--eta", f.eta, "true flux offset lambda(0) - psi(0)");
    cmd->add_option("--duration", f.duration, "simulated time [s]");
    cmd->add_option("--dt", f.dt, "integration step [s]");
    cmd->add_option("--decimate", f.decimate, "log every n-th step")->check(CLI::PositiveNumber);
    cmd->add_flag("--log-delta-u", f.log_delta_u, "add the u - u_full_state column");
    cmd->add_option("--out", f.out, "output directory");
}

// Config file first, then flags.
Scenario build_scenario(const CommonFlags& f) {
    ConfigEntries entries;
    if (!f.config.empty()) entries = read_config_file(f.config);
    std::optional<ReferenceKind> kind;
    if (!f.scenario.empty()) kind = parse_reference_kind(f.scenario);
    Scenario sc = scenario_from_entries(entries, kind);
    if (!f.mode.empty()) sc.mode = parse_controller_mode(f.mode);
    if (f.gamma) sc.gamma = *f.gamma;
    if (f.eta) sc.eta = *f.eta;
    if (f.duration) sc.duration = *f.duration;
    if (f.dt) sc.dt = *f.dt;
    if (f.decimate) sc.decimate = *f.decimate;
    if (f.log_delta_u) sc.log_delta_u = true;
    sc.validate();
    return sc;
}

void write_run(const fs::path& dir, const Scenario& sc, const RunResult& res) {
    fs::create_directories(dir);
    write_csv(res.log, (dir / "run.csv").string(), sc.log_delta_u);
    write_text_file((dir / "metrics.csv").string(), metrics_to_csv(res.metrics));
    write_text_file((dir / "scenario.cfg").string(), to_config_text(sc));
}

void warn_abort(const std::string& label, const RunMetrics& m) {
    std::fprintf(stderr, "%snumeric abort at t=%.6g in %s\n", label.c_str(), m.abort_time, m.abort_subsystem.c_str());
}

int cmd_run(const CommonFlags& f) {
    const Scenario sc = build_scenario(f);
    const RunResult res = run_checked(sc);
    write_run(f.out, sc, res);
    if (res.metrics.aborted) {
        warn_abort("", res.metrics);
        return kExitAbort;
    }
    return 0;
}

int cmd_sweep(const CommonFlags& f, const std::string& axis, const std::vector<double>& values) {
    const Scenario base = build_scenario(f);
    const auto runs = sweep(base, axis, values, true);
    const fs::path out(f.out);
    fs::create_directories(out);
    bool aborted = false;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        write_run(out / ("run_" + std::to_string(i)), runs[i].scenario, runs[i].result);
        if (runs[i].result.metrics.aborted) {
            warn_abort("run_" + std::to_string(i) + ": ", runs[i].result.metrics);
            aborted = true;
        }
    }
    write_text_file((out / "metrics.csv").string(), sweep_metrics_to_csv(axis, runs));
    return aborted ? kExitAbort : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sensorless levitated-ball observer/controller simulator"};
    app.require_subcommand(1);

    CommonFlags run_flags, sweep_flags;
    auto* run_cmd = app.add_subcommand("run", "simulate one scenario");
    add_common(run_cmd, run_flags);

    auto* sweep_cmd = app.add_subcommand("sweep", "simulate one scenario per value of a scalar field");
    add_common(sweep_cmd, sweep_flags);
    std::string axis;
    std::vector<double> values;
    sweep_cmd->add_option("--axis", axis, "scalar scenario key, e.g. gamma or eta")->required();
    sweep_cmd->add_option("--values", values, "comma-separated values")->required()->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) return cmd_run(run_flags);
        return cmd_sweep(sweep_flags, axis, values);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::filesystem::filesystem_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
