#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "maglev/scenario.hpp"

namespace maglev {

/// One logged time step. Errors follow e = estimate - true.
struct LogRecord {
    double t = 0.0;
    double Y = 0.0, v = 0.0, lambda = 0.0, i = 0.0;
    double u = 0.0;
    double psi = 0.0;
    double eta_hat = 0.0, lambda_hat = 0.0, v_hat = 0.0, Y_hat = 0.0;
    double Delta = 0.0, Ycal = 0.0;
    double z = 0.0;
    std::array<double, 5> phi{};
    double e_lambda = 0.0, e_v = 0.0, e_Y = 0.0;
    double Y_star = 0.0, dY_star = 0.0, ddY_star = 0.0, dddY_star = 0.0;
    double excitation = 0.0;
    bool clamp = false;
    bool constraint_violated = false;
    double delta_u = 0.0;  ///< u - u_full_state; only filled when the scenario logs it
};

struct RunMetrics {
    double duration = 0.0;
    // First time after which the error stays below the scenario threshold; +inf if never.
    double settle_lambda = 0.0, settle_v = 0.0, settle_Y = 0.0, settle_tracking = 0.0;
    double final_e_lambda = 0.0, final_e_v = 0.0, final_e_Y = 0.0, final_tracking = 0.0;
    double max_abs_u = 0.0;
    double excitation_integral = 0.0;
    bool delta_not_l2_plausible = false;
    std::size_t clamp_steps = 0;
    std::size_t constraint_violation_steps = 0;
    bool aborted = false;
    double abort_time = 0.0;
    std::string abort_subsystem;
};

struct RunResult {
    std::vector<LogRecord> log;  ///< decimated
    RunMetrics metrics;
};

/// Called once per integration step with the record at the step start, before decimation.
using StepCallback = std::function<void(const LogRecord&)>;

/// Fixed-step closed-loop simulation of plant, PEBO, regressor, DREM, observers,
/// reference prefilter and controller on a single RK4 clock. The control voltage
/// is evaluated at the start of each step and held over it.
///
/// Throws NumericAbort when a state becomes non-finite; `run_checked` reports it
/// in the metrics instead.
RunResult run(const Scenario& sc, const StepCallback& on_step = {});
RunResult run_checked(const Scenario& sc, const StepCallback& on_step = {});

struct SweepRun {
    double value = 0.0;
    Scenario scenario;
    RunResult result;
};

/// Runs `base` once per value of the scalar field `axis`. Runs execute concurrently;
/// results come back in the order of `values`.
std::vector<SweepRun> sweep(const Scenario& base, const std::string& axis,
                            const std::vector<double>& values, bool keep_logs = true);

}  // namespace maglev
