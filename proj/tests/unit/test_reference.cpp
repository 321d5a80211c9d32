#include <doctest.h>

#include <cmath>
#include <vector>

#include "maglev/errors.hpp"
#include "maglev/reference.hpp"

using namespace maglev;

TEST_CASE("reference: raw commands") {
    CHECK(raw_reference(ReferenceKind::Sinusoids, 0.0) == doctest::Approx(0.5 * std::sin(M_PI / 3.0)));
    CHECK(raw_reference(ReferenceKind::Steps, 0.5) == 0.0);
    CHECK(raw_reference(ReferenceKind::Steps, 1.0) == 2.0);
    CHECK(raw_reference(ReferenceKind::Steps, 2.9) == 2.0);
    CHECK(raw_reference(ReferenceKind::Steps, 3.0) == 0.0);
    CHECK(raw_reference(ReferenceKind::Steps, 6.0) == 3.0);
    CHECK(raw_reference(ReferenceKind::Constant, 4.0, -0.25) == -0.25);
    CHECK(parse_reference_kind("sin") == ReferenceKind::Sinusoids);
    CHECK(parse_reference_kind("steps") == ReferenceKind::Steps);
    CHECK_THROWS_AS(parse_reference_kind("ramp"), ConfigError);
}

TEST_CASE("reference: constant command settles with vanishing derivatives") {
    ReferenceState st;
    for (int n = 0; n < 100000; ++n) st = reference_step(st, 0.8, 1e-4, 10.0);
    const ReferenceSignals s = st.signals(10.0);
    CHECK(s.pos == doctest::Approx(0.8).epsilon(1e-9));
    CHECK(std::abs(s.vel) < 1e-9);
    CHECK(std::abs(s.acc) < 1e-8);
    CHECK(std::abs(s.jerk) < 1e-7);

    const ReferenceSignals r = reference_at_rest(0.8).signals(10.0);
    CHECK(r.pos == 0.8);
    CHECK(r.vel == 0.0);
    CHECK(r.acc == 0.0);
    CHECK(r.jerk == 0.0);
}

// Central differences of the logged derivatives agree with the next derivative.
TEST_CASE("reference: derivative outputs are consistent") {
    const double dt = 1e-4, nu = 10.0;
    std::vector<ReferenceSignals> sig;
    ReferenceState st;
    for (int n = 0; n < 40000; ++n) {
        sig.push_back(st.signals(nu));
        st = reference_step(st, raw_reference(ReferenceKind::Sinusoids, n * dt), dt, nu);
    }
    double worst = 0;
    for (std::size_t n = 1000; n + 1 < sig.size(); n += 97) {
        const auto d = [&](auto f) { return (f(sig[n + 1]) - f(sig[n - 1])) / (2 * dt); };
        worst = std::max(worst, std::abs(d([](auto& s) { return s.pos; }) - sig[n].vel));
        worst = std::max(worst, std::abs(d([](auto& s) { return s.vel; }) - sig[n].acc));
        worst = std::max(worst, std::abs(d([](auto& s) { return s.acc; }) - sig[n].jerk));
    }
    CHECK(worst < 1e-3);
}
