#include "maglev/controller.hpp"

#include <cmath>

namespace maglev {

FlcGains::FlcGains(double k0, double k1, double k2) : k0_(k0), k1_(k1), k2_(k2) {
    if (!is_hurwitz(k0, k1, k2)) {
        throw ConfigError("flc: s^3 + k2 s^2 + k1 s + k0 is not Hurwitz");
    }
}

bool FlcGains::is_hurwitz(double k0, double k1, double k2) {
    return std::isfinite(k0) && std::isfinite(k1) && std::isfinite(k2) && k2 > 0.0 && k0 > 0.0 &&
           k1 * k2 > k0;
}

double clamp_flux(double lambda, double floor) {
    const double sign = lambda < 0.0 ? -1.0 : 1.0;
    return sign * std::max(std::abs(lambda), floor);
}

ControlOutput flc(const ControlInput& in, const FlcGains& gains, const PlantParams& prm,
                  double flux_floor) {
    ControlOutput out;
    const double lambda = clamp_flux(in.lambda, flux_floor);
    out.clamped = lambda != in.lambda;

    const double accel = lambda * lambda / (2.0 * prm.k * prm.m) - prm.g;
    out.v_fl = in.ref.jerk - gains.k2() * (accel - in.ref.acc) - gains.k1() * (in.v - in.ref.vel) -
               gains.k0() * (in.Y - in.ref.pos);
    out.u = prm.k / lambda * prm.m * out.v_fl + prm.R * (prm.c - in.Y) * lambda / prm.k;
    return out;
}

ControlOutput sensorless_control(const ObserverEstimates& obs, const ReferenceSignals& ref,
                                 const FlcGains& gains, const PlantParams& prm, double flux_floor) {
    return flc({obs.lambda_hat, obs.Y_hat, obs.v_hat, ref}, gains, prm, flux_floor);
}

}  // namespace maglev
