#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>

#include "maglev/errors.hpp"

namespace maglev {

template <std::size_t N>
using StateVec = std::array<double, N>;

/// Classical fixed-step 4th-order Runge-Kutta.
///
/// `rhs(t, x, dx)` writes the time derivative of `x` into `dx`. Inputs that
/// must be held over the step (zero-order hold) are captured by the caller.
template <std::size_t N, class Rhs>
void rk4_step(StateVec<N>& x, double t, double dt, Rhs&& rhs) {
    StateVec<N> k1{}, k2{}, k3{}, k4{}, tmp{};
    rhs(t, std::as_const(x), k1);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = x[i] + 0.5 * dt * k1[i];
    rhs(t + 0.5 * dt, std::as_const(tmp), k2);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = x[i] + 0.5 * dt * k2[i];
    rhs(t + 0.5 * dt, std::as_const(tmp), k3);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = x[i] + dt * k3[i];
    rhs(t + dt, std::as_const(tmp), k4);
    for (std::size_t i = 0; i < N; ++i) {
        x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
}

inline void require_finite(double value, const char* node) {
    if (!std::isfinite(value)) throw NonFiniteSignal(node);
}

template <std::size_t N>
bool all_finite(const StateVec<N>& x) {
    for (double v : x) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

inline void require_positive_step(double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("time step must be positive");
}

}  // namespace maglev
