#pragma once

#include "maglev/numerics.hpp"

namespace maglev {

/// Physical constants of the levitated ball. SI units throughout.
struct PlantParams {
    double m = 0.0844;  ///< ball mass (kg)
    double k = 1.0;     ///< inductance constant (H m)
    double R = 2.52;    ///< coil resistance (Ohm)
    double c = 0.005;   ///< geometric offset (m)
    double g = 9.81;    ///< gravitational acceleration (m/s^2)

    /// Throws ConfigError unless every constant is strictly positive.
    void validate() const;
};

/// True state col(Y, p, lambda): position, momentum, flux linkage.
struct PlantState {
    double Y = 0.0;
    double p = 0.0;
    double lambda = 0.0;

    double velocity(const PlantParams& prm) const { return p / prm.m; }
};

/// Time derivative of a PlantState, component-wise.
struct PlantRates {
    double dY = 0.0;
    double dp = 0.0;
    double dlambda = 0.0;
};

/// Coil current i = (c - Y) lambda / k.
double output_current(const PlantState& s, const PlantParams& prm);

PlantRates plant_rhs(const PlantState& s, double u, const PlantParams& prm);

struct Equilibrium {
    PlantState state;
    double voltage = 0.0;  ///< u that keeps lambda constant at the equilibrium
};

/// Levitation equilibrium (Y*, 0, +sqrt(2kmg)) and its holding voltage.
Equilibrium equilibrium(double Y_star, const PlantParams& prm);

/// Positive root sqrt(2kmg).
double equilibrium_flux(const PlantParams& prm);

inline StateVec<3> to_vec(const PlantState& s) { return {s.Y, s.p, s.lambda}; }
inline PlantState plant_state_from(std::span<const double, 3> x) { return {x[0], x[1], x[2]}; }

}  // namespace maglev
