#pragma once

#include <string_view>

#include "maglev/numerics.hpp"

namespace maglev {

enum class ReferenceKind { Sinusoids, Steps, Constant };

ReferenceKind parse_reference_kind(std::string_view name);
std::string_view to_string(ReferenceKind kind);

/// Unfiltered position command at time t.
///
/// Sinusoids: sin t + sin 2t + 0.5 sin(3.7t + pi/3).
/// Steps: 0 on [0,1), 2 on [1,3), 0 on [3,5), 3 afterwards.
/// Constant: `level` for all t.
double raw_reference(ReferenceKind kind, double t, double level = 0.0);

/// Y* and its first three time derivatives.
struct ReferenceSignals {
    double pos = 0.0;
    double vel = 0.0;
    double acc = 0.0;
    double jerk = 0.0;
};

/// Cascade of four nu/(p+nu) stages realizing nu^4/(p+nu)^4.
/// Derivatives are read off the cascade states, never differenced.
struct ReferenceState {
    StateVec<4> stage{};

    ReferenceSignals signals(double nu) const;
};

void reference_rates(std::span<const double, 4> stage, double raw, double nu, std::span<double, 4> out);
ReferenceSignals reference_signals(std::span<const double, 4> stage, double nu);

/// Advances the prefilter by dt with `raw` held over the step.
ReferenceState reference_step(ReferenceState ref, double raw, double dt, double nu);

/// Stage values that make the prefilter start at rest on `level`.
ReferenceState reference_at_rest(double level);

}  // namespace maglev
