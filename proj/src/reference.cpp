#include "maglev/reference.hpp"

#include <numbers>
#include <string>

namespace maglev {

ReferenceKind parse_reference_kind(std::string_view name) {
    if (name == "sin" || name == "sinusoids") return ReferenceKind::Sinusoids;
    if (name == "steps") return ReferenceKind::Steps;
    if (name == "constant") return ReferenceKind::Constant;
    throw ConfigError("unknown reference kind '" + std::string(name) + "'");
}

std::string_view to_string(ReferenceKind kind) {
    switch (kind) {
        case ReferenceKind::Sinusoids: return "sin";
        case ReferenceKind::Steps: return "steps";
        case ReferenceKind::Constant: return "constant";
    }
    return "?";
}

double raw_reference(ReferenceKind kind, double t, double level) {
    switch (kind) {
        case ReferenceKind::Sinusoids:
            return std::sin(t) + std::sin(2.0 * t) + 0.5 * std::sin(3.7 * t + std::numbers::pi / 3.0);
        case ReferenceKind::Steps:
            if (t < 1.0) return 0.0;
            if (t < 3.0) return 2.0;
            if (t < 5.0) return 0.0;
            return 3.0;
        case ReferenceKind::Constant:
            return level;
    }
    return 0.0;
}

void reference_rates(std::span<const double, 4> x, double raw, double nu, std::span<double, 4> out) {
    out[0] = nu * (raw - x[0]);
    out[1] = nu * (x[0] - x[1]);
    out[2] = nu * (x[1] - x[2]);
    out[3] = nu * (x[2] - x[3]);
}

ReferenceSignals reference_signals(std::span<const double, 4> x, double nu) {
    ReferenceSignals r;
    r.pos = x[3];
    r.vel = nu * (x[2] - x[3]);
    r.acc = nu * nu * (x[1] - 2.0 * x[2] + x[3]);
    r.jerk = nu * nu * nu * (x[0] - 3.0 * x[1] + 3.0 * x[2] - x[3]);
    return r;
}

ReferenceSignals ReferenceState::signals(double nu) const { return reference_signals(stage, nu); }

ReferenceState reference_step(ReferenceState ref, double raw, double dt, double nu) {
    require_positive_step(dt);
    if (!(nu > 0.0)) throw ConfigError("reference prefilter rate nu must be > 0");
    rk4_step(ref.stage, 0.0, dt, [&](double, const StateVec<4>& x, StateVec<4>& dx) {
        reference_rates(x, raw, nu, dx);
    });
    return ref;
}

ReferenceState reference_at_rest(double level) { return {{level, level, level, level}}; }

}  // namespace maglev
