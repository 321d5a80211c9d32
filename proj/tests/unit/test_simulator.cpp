#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "maglev/csv.hpp"
#include "maglev/errors.hpp"
#include "maglev/numerics.hpp"
#include "maglev/simulator.hpp"

using namespace maglev;

namespace {

Scenario constant_reference(ControllerMode mode, double duration) {
    Scenario sc = Scenario::preset(ReferenceKind::Constant);
    sc.reference_level = 0.0;
    sc.mode = mode;
    sc.duration = duration;
    return sc;
}

// Starts at rest on the reference with the levitation flux.
Scenario settled(ReferenceKind kind, ControllerMode mode, double duration) {
    Scenario sc = Scenario::preset(kind);
    sc.mode = mode;
    sc.duration = duration;
    sc.Y0 = 0.0;
    sc.Ydot0 = 0.0;
    sc.eta = equilibrium_flux(sc.plant);
    sc.eta_hat0 = sc.eta;
    return sc;
}

}  // namespace

TEST_CASE("simulator: equilibrium is invariant under the full-state law") {
    Scenario sc = constant_reference(ControllerMode::FullState, 2.0);
    sc.Y0 = 0.0;
    sc.Ydot0 = 0.0;
    sc.eta = equilibrium_flux(sc.plant);
    const double u_star = equilibrium(0.0, sc.plant).voltage;
    double worst_Y = 0, worst_u = 0;
    run(sc, [&](const LogRecord& r) {
        worst_Y = std::max(worst_Y, std::abs(r.Y));
        worst_u = std::max(worst_u, std::abs(r.u - u_star));
    });
    CHECK(worst_Y < 1e-12);
    CHECK(worst_u < 1e-9);
}

// The error starts on the triple mode at -10: e = d, e' = -10 d, e'' = 100 d.
TEST_CASE("simulator: full-state pole placement") {
    Scenario sc = constant_reference(ControllerMode::FullState, 1.6);
    const double d = 1e-3;
    sc.Y0 = d;
    sc.Ydot0 = -10.0 * d;
    sc.eta = std::sqrt(2.0 * sc.plant.k * sc.plant.m * (sc.plant.g + 100.0 * d));
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    run(sc, [&](const LogRecord& r) {
        if (r.t < 0.2 || r.t > 1.5) return;
        const double y = std::log(std::abs(r.Y - r.Y_star));
        sx += r.t, sy += y, sxx += r.t * r.t, sxy += r.t * y;
        ++n;
    });
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(-slope == doctest::Approx(10.0).epsilon(0.15));
}

TEST_CASE("simulator: logged errors are differences of logged signals") {
    Scenario sc = Scenario::preset(ReferenceKind::Sinusoids);
    sc.duration = 1.0;
    sc.log_delta_u = true;
    const RunResult res = run(sc);
    REQUIRE(res.log.size() == 1000);
    for (const auto& r : res.log) {
        REQUIRE(r.e_lambda == r.lambda_hat - r.lambda);
        REQUIRE(r.e_v == r.v_hat - r.v);
        REQUIRE(r.e_Y == r.Y_hat - r.Y);
        REQUIRE(r.lambda_hat == r.psi + r.eta_hat);
        // flux error is the parameter error, up to rounding of psi - lambda + eta
        REQUIRE(std::abs(r.e_lambda - (r.eta_hat - sc.eta)) < 1e-12);
        REQUIRE(r.constraint_violated == (r.Y >= sc.plant.c));
    }
    CHECK(res.log.front().e_Y == 1.0);
    CHECK(res.log.front().clamp);
    CHECK(std::isfinite(res.log.front().u));
}

TEST_CASE("simulator: exact estimates give zero control mismatch") {
    Scenario sc = settled(ReferenceKind::Sinusoids, ControllerMode::FullState, 0.5);
    sc.log_delta_u = true;
    for (const auto& r : run(sc).log) REQUIRE(r.delta_u == 0.0);
}

TEST_CASE("simulator: determinism") {
    Scenario sc = Scenario::preset(ReferenceKind::Sinusoids);
    sc.duration = 1.5;
    const std::string a = log_to_csv(run(sc).log, false);
    const std::string b = log_to_csv(run(sc).log, false);
    CHECK(a == b);
    CHECK(metrics_to_csv(run(sc).metrics) == metrics_to_csv(run(sc).metrics));
}

TEST_CASE("simulator: one step logs one record") {
    Scenario sc;
    sc.duration = sc.dt;
    const RunResult res = run(sc);
    CHECK(res.log.size() == 1);
    const std::string csv = log_to_csv(res.log, false);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
}

// RK4 itself is fourth order; the closed loop holds u over each step, which is
// first order in dt.
TEST_CASE("simulator: step halving") {
    PlantParams prm;
    auto terminal = [&](double dt) {
        StateVec<3> x{-0.5, 0.0, 1.2};
        const int steps = static_cast<int>(std::lround(0.4 / dt));
        for (int n = 0; n < steps; ++n) {
            rk4_step(x, n * dt, dt, [&](double t, const StateVec<3>& s, StateVec<3>& dx) {
                const PlantRates r = plant_rhs(plant_state_from(s), 0.5 * std::sin(5 * t), prm);
                dx = {r.dY, r.dp, r.dlambda};
            });
        }
        return x;
    };
    const auto a = terminal(4e-3), b = terminal(2e-3), c = terminal(1e-3);
    CHECK((a[0] - b[0]) / (b[0] - c[0]) == doctest::Approx(16.0).epsilon(0.05));
    CHECK((a[2] - b[2]) / (b[2] - c[2]) == doctest::Approx(16.0).epsilon(0.05));

    double Y[3], L[3];
    for (int k = 0; k < 3; ++k) {
        Scenario sc = settled(ReferenceKind::Sinusoids, ControllerMode::FullState, 2.0);
        sc.dt = 4e-4 / (1 << k);
        run(sc, [&](const LogRecord& r) { Y[k] = r.Y, L[k] = r.lambda; });
    }
    CHECK((Y[0] - Y[1]) / (Y[1] - Y[2]) == doctest::Approx(2.0).epsilon(0.1));
    CHECK((L[0] - L[1]) / (L[1] - L[2]) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("simulator: non-finite state aborts with time and subsystem") {
    Scenario sc = constant_reference(ControllerMode::FullState, 1.0);
    sc.eta = 0.0;
    sc.eps_lambda = 1e-300;
    CHECK_THROWS_AS(run(sc), NumericAbort);
    const RunResult res = run_checked(sc);
    CHECK(res.metrics.aborted);
    CHECK(res.metrics.abort_time < 1.0);
    CHECK_FALSE(res.metrics.abort_subsystem.empty());
    CHECK_FALSE(res.log.empty());
}

TEST_CASE("simulator: invalid scenario is rejected before running") {
    Scenario sc;
    sc.k0 = 1e6;
    CHECK_THROWS_AS(run(sc), ConfigError);
}

TEST_CASE("sweep: one run per value, in order") {
    Scenario sc = Scenario::preset(ReferenceKind::Sinusoids);
    sc.duration = 0.5;
    const std::vector<double> gammas{1.0, 5.0, 10.0};
    const auto runs = sweep(sc, "gamma", gammas, true);
    REQUIRE(runs.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(runs[i].value == gammas[i]);
        CHECK(runs[i].scenario.gamma == gammas[i]);
        Scenario single = sc;
        single.gamma = gammas[i];
        CHECK(log_to_csv(runs[i].result.log, false) == log_to_csv(run(single).log, false));
    }
    CHECK_THROWS_AS(sweep(sc, "gama", gammas), ConfigError);
    CHECK_THROWS_AS(sweep(sc, "mode", gammas), ConfigError);
}
