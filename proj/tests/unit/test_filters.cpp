#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "maglev/errors.hpp"
#include "maglev/filters.hpp"
#include "maglev/numerics.hpp"

using namespace maglev;

TEST_CASE("filters: DC behaviour") {
    FilterNode w = FilterNode::low_pass(10.0);
    FilterNode d = FilterNode::derivative(0.5);
    FilterNode z = FilterNode::low_pass(10.0);
    double yw = 0, yd = 0;
    for (int n = 0; n < 200000; ++n) {
        yw = w.step(1.0, 1e-4);
        yd = d.step(1.0, 1e-4);
        CHECK(z.step(0.0, 1e-4) == 0.0);
    }
    CHECK(yw == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(yd) < 1e-4);  // e^{-0.5*20}/2
    CHECK(z.state() == 0.0);
}

TEST_CASE("filters: non-finite input names the node") {
    FilterNode w = FilterNode::low_pass(10.0, "omega2");
    try {
        w.step(std::numeric_limits<double>::quiet_NaN(), 1e-4);
        FAIL("expected NonFiniteSignal");
    } catch (const NonFiniteSignal& e) {
        CHECK(e.node() == "omega2");
    }
}

TEST_CASE("filters: linearity on random piecewise inputs") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    std::vector<double> a(400), b(400);
    for (auto& v : a) v = U(gen);
    for (auto& v : b) v = U(gen);
    const double al = 0.3, be = -1.7;
    for (auto make : {+[] { return FilterNode::low_pass(10.0); }, +[] { return FilterNode::derivative(0.01); },
                      +[] { return FilterNode::pure_lag(3.0); }}) {
        FilterNode fa = make(), fb = make(), fc = make();
        for (std::size_t n = 0; n < 20000; ++n) {
            const std::size_t piece = n / 50;
            const double ya = fa.step(a[piece], 1e-3);
            const double yb = fb.step(b[piece], 1e-3);
            const double yc = fc.step(al * a[piece] + be * b[piece], 1e-3);
            REQUIRE(yc == doctest::Approx(al * ya + be * yb).epsilon(1e-10).scale(1.0));
        }
    }
}

// W[a b] = b W[a] - (1/(p+mu))[b' W[a]] holds exactly from zero initial states.
TEST_CASE("filters: swapping lemma") {
    const double mu = 10.0;
    auto a = [](double t) { return std::sin(t) + 0.3; };
    auto b = [](double t) { return std::cos(2.0 * t); };
    auto db = [](double t) { return -2.0 * std::sin(2.0 * t); };
    // x0 = W[ab], x1 = W[a], x2 = (1/(p+mu))[b' W[a]]
    StateVec<3> x{};
    auto rhs = [&](double t, const StateVec<3>& s, StateVec<3>& dx) {
        dx[0] = -mu * s[0] + mu * a(t) * b(t);
        dx[1] = -mu * s[1] + mu * a(t);
        dx[2] = -mu * s[2] + db(t) * s[1];
    };
    const double dt = 1e-3;
    double worst = 0, worst_plus = 0;
    for (int n = 0; n < 10000; ++n) {
        rk4_step(x, n * dt, dt, rhs);
        const double t = (n + 1) * dt;
        worst = std::max(worst, std::abs(x[0] - (b(t) * x[1] - x[2])));
        worst_plus = std::max(worst_plus, std::abs(x[0] - (b(t) * x[1] + x[2])));
    }
    CHECK(worst < 1e-10);
    CHECK(worst_plus > 1e-3);  // the "+" sign does not hold
}
