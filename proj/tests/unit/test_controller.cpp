#include <doctest.h>

#include <cmath>

#include "maglev/controller.hpp"
#include "maglev/errors.hpp"
#include "maglev/plant.hpp"

using namespace maglev;

TEST_CASE("controller: Hurwitz gate") {
    CHECK_NOTHROW(FlcGains(1000, 300, 30));
    CHECK(FlcGains::is_hurwitz(1000, 300, 30));
    CHECK_FALSE(FlcGains::is_hurwitz(1, 1, 1));
    CHECK_FALSE(FlcGains::is_hurwitz(-1, 3, 3));
    CHECK_FALSE(FlcGains::is_hurwitz(1, 3, 0));
    CHECK_THROWS_AS(FlcGains(9000, 300, 30), ConfigError);
}

TEST_CASE("controller: equilibrium gives the holding voltage") {
    PlantParams prm;
    const Equilibrium eq = equilibrium(-0.2, prm);
    ControlInput in{eq.state.lambda, -0.2, 0.0, {-0.2, 0.0, 0.0, 0.0}};
    const ControlOutput out = flc(in, FlcGains(), prm);
    CHECK(out.v_fl == doctest::Approx(0.0).scale(1e-12));
    CHECK(out.u == doctest::Approx(eq.voltage).epsilon(1e-12));
    CHECK_FALSE(out.clamped);
}

TEST_CASE("controller: flux floor") {
    CHECK(clamp_flux(0.0, 1e-3) == 1e-3);
    CHECK(clamp_flux(-1e-5, 1e-3) == -1e-3);
    CHECK(clamp_flux(0.5, 1e-3) == 0.5);
    PlantParams prm;
    const ControlOutput out = flc({0.0, -1.0, 0.5, {}}, FlcGains(), prm);
    CHECK(out.clamped);
    CHECK(std::isfinite(out.u));
}

TEST_CASE("controller: exact estimates reproduce the full-state law") {
    PlantParams prm;
    const ReferenceSignals ref{0.3, -0.1, 0.4, 2.0};
    const ControlOutput a = flc({1.1, -0.6, 0.2, ref}, FlcGains(), prm);
    const ControlOutput b = sensorless_control({1.1, -0.6, 0.2}, ref, FlcGains(), prm);
    CHECK(a.u == b.u);
    CHECK(a.v_fl == b.v_fl);
}

// With the law applied, the acceleration error's rate equals v_FL - Y*''' so
// e''' = -k2 e'' - k1 e' - k0 e along any state.
TEST_CASE("controller: closed-loop jerk matches the error polynomial") {
    PlantParams prm;
    const FlcGains g;
    const ReferenceSignals ref{0.1, 0.2, -0.3, 0.5};
    const PlantState s{-0.4, prm.m * 0.7, 1.2};
    const ControlOutput out = flc({s.lambda, s.Y, s.velocity(prm), ref}, g, prm);
    const PlantRates r = plant_rhs(s, out.u, prm);
    const double jerk = s.lambda * r.dlambda / (prm.k * prm.m);
    const double e = s.Y - ref.pos, ed = s.velocity(prm) - ref.vel;
    const double edd = s.lambda * s.lambda / (2 * prm.k * prm.m) - prm.g - ref.acc;
    CHECK(jerk - ref.jerk == doctest::Approx(-g.k2() * edd - g.k1() * ed - g.k0() * e).epsilon(1e-12));
}
