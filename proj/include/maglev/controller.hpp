#pragma once

#include "maglev/plant.hpp"
#include "maglev/reference.hpp"

namespace maglev {

/// Coefficients of the target error polynomial s^3 + k2 s^2 + k1 s + k0.
class FlcGains {
public:
    /// Throws ConfigError unless the polynomial is Hurwitz (k2 > 0, k0 > 0, k1 k2 > k0).
    FlcGains(double k0, double k1, double k2);
    FlcGains() : FlcGains(1000.0, 300.0, 30.0) {}

    static bool is_hurwitz(double k0, double k1, double k2);

    double k0() const noexcept { return k0_; }
    double k1() const noexcept { return k1_; }
    double k2() const noexcept { return k2_; }

private:
    double k0_, k1_, k2_;
};

/// State values fed to the law, true or estimated.
struct ControlInput {
    double lambda = 0.0;
    double Y = 0.0;
    double v = 0.0;
    ReferenceSignals ref;
};

struct ControlOutput {
    double u = 0.0;
    double v_fl = 0.0;
    bool clamped = false;  ///< |lambda| was raised to the flux floor
};

/// sign(lambda) * max(|lambda|, floor) with sign(0) = +1.
double clamp_flux(double lambda, double floor);

/// Feedback-linearizing law
///   u = (k/lambda) m v_FL + R (c - Y) lambda / k,
///   v_FL = Y*''' - k2((lambda^2/(2km) - g) - Y*'') - k1(v - Y*') - k0(Y - Y*).
ControlOutput flc(const ControlInput& in, const FlcGains& gains, const PlantParams& prm,
                  double flux_floor = 1e-3);

struct ObserverEstimates {
    double lambda_hat = 0.0;
    double Y_hat = 0.0;
    double v_hat = 0.0;
};

/// Certainty-equivalent law: flc evaluated on the observer estimates.
ControlOutput sensorless_control(const ObserverEstimates& obs, const ReferenceSignals& ref,
                                 const FlcGains& gains, const PlantParams& prm,
                                 double flux_floor = 1e-3);

}  // namespace maglev
