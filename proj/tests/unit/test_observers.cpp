#include <doctest.h>

#include <cmath>

#include "maglev/numerics.hpp"
#include "maglev/observers.hpp"
#include "maglev/plant.hpp"

using namespace maglev;

namespace {

// Plant held at constant flux (u = R i) with both observers fed the true flux.
struct Bench {
    PlantParams prm;
    double gv = 100.0, gY = 100.0;
    // [Y, p, lambda, chi, Y_hat]
    void rhs(const StateVec<5>& x, StateVec<5>& dx, bool true_speed) const {
        const PlantState ps{x[0], x[1], x[2]};
        const double i = output_current(ps, prm);
        const double u = prm.R * i;
        const PlantRates r = plant_rhs(ps, u, prm);
        const double lam_dot = -prm.R * i + u;
        const double v_hat = speed_estimate(x[3], x[2], i, gv, prm);
        dx = {r.dY, r.dp, r.dlambda, speed_observer_rate(x[3], x[2], i, lam_dot, gv, prm),
              position_observer_rate(x[4], x[2], true_speed ? ps.velocity(prm) : v_hat, i, gY, prm)};
    }
};

}  // namespace

TEST_CASE("observers: speed estimate inverts the chi construction") {
    PlantParams prm;
    const auto st = SpeedObserverState::with_estimate(0.42, 0.9, 0.3, 100.0, prm);
    CHECK(speed_estimate(st.chi, 0.9, 0.3, 100.0, prm) == doctest::Approx(0.42).epsilon(1e-14));
}

TEST_CASE("observers: exact flux gives exponential speed error decay") {
    Bench b;
    const double lam = 1.0, Y0 = -0.3, v0 = 0.2, e0 = 0.3;
    const double i0 = output_current({Y0, b.prm.m * v0, lam}, b.prm);
    StateVec<5> x{Y0, b.prm.m * v0, lam,
                  SpeedObserverState::with_estimate(v0 + e0, lam, i0, b.gv, b.prm).chi, Y0};
    const double dt = 1e-5;
    double worst = 0;
    for (int n = 0; n < 5000; ++n) {
        rk4_step(x, n * dt, dt, [&](double, const StateVec<5>& s, StateVec<5>& d) { b.rhs(s, d, false); });
        const PlantState ps{x[0], x[1], x[2]};
        const double ev = speed_estimate(x[3], x[2], output_current(ps, b.prm), b.gv, b.prm) - ps.velocity(b.prm);
        worst = std::max(worst, std::abs(ev - e0 * std::exp(-b.gv * lam * lam * (n + 1) * dt)));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("observers: exact flux and speed give exponential position error decay") {
    Bench b;
    const double lam = 0.8, e0 = 1.0;
    StateVec<5> x{-1.0, b.prm.m * 0.5, lam, 0.0, -1.0 + e0};
    const double dt = 1e-5;
    double worst = 0;
    for (int n = 0; n < 5000; ++n) {
        rk4_step(x, n * dt, dt, [&](double, const StateVec<5>& s, StateVec<5>& d) { b.rhs(s, d, true); });
        worst = std::max(worst, std::abs((x[4] - x[0]) - e0 * std::exp(-b.gY * lam * lam * (n + 1) * dt)));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("observers: (c lambda - k i) lambda = lambda^2 Y") {
    PlantParams prm;
    for (double Y : {-1.0, -0.2, 0.003}) {
        for (double lam : {-0.4, 0.01, 1.3}) {
            const double i = output_current({Y, 0.0, lam}, prm);
            CHECK((prm.c * lam - prm.k * i) * lam == doctest::Approx(lam * lam * Y).epsilon(1e-12).scale(1e-15));
        }
    }
}

TEST_CASE("observers: zero flux estimate leaves pure dead reckoning") {
    PlantParams prm;
    CHECK(position_observer_rate(0.3, 0.0, 0.25, 0.7, 100.0, prm) == 0.25);
    PositionObserverState p{0.0, 100.0};
    p = position_step(p, 0.0, 0.5, 0.1, prm, 0.2);
    CHECK(p.Y_hat == doctest::Approx(0.1));
}
