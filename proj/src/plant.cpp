#include "maglev/plant.hpp"

#include <cmath>

namespace maglev {

void PlantParams::validate() const {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(m)) throw ConfigError("plant: mass m must be > 0");
    if (!positive(k)) throw ConfigError("plant: inductance constant k must be > 0");
    if (!positive(R)) throw ConfigError("plant: resistance R must be > 0");
    if (!positive(c)) throw ConfigError("plant: offset c must be > 0");
    if (!positive(g)) throw ConfigError("plant: gravity g must be > 0");
}

double output_current(const PlantState& s, const PlantParams& prm) {
    return (prm.c - s.Y) * s.lambda / prm.k;
}

PlantRates plant_rhs(const PlantState& s, double u, const PlantParams& prm) {
    PlantRates r;
    r.dlambda = -prm.R * output_current(s, prm) + u;
    r.dY = s.p / prm.m;
    r.dp = s.lambda * s.lambda / (2.0 * prm.k) - prm.m * prm.g;
    return r;
}

double equilibrium_flux(const PlantParams& prm) { return std::sqrt(2.0 * prm.k * prm.m * prm.g); }

Equilibrium equilibrium(double Y_star, const PlantParams& prm) {
    Equilibrium eq;
    eq.state = {Y_star, 0.0, equilibrium_flux(prm)};
    eq.voltage = prm.R * output_current(eq.state, prm);
    return eq;
}

}  // namespace maglev
