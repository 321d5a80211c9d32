#pragma once

#include "maglev/plant.hpp"

namespace maglev {

/// Speed observer driven by the flux estimate; v_hat = chi - gamma_v k i lambda_hat.
struct SpeedObserverState {
    double chi = 0.0;
    double v_hat = 0.0;
    double gamma_v = 100.0;

    /// State whose speed estimate equals `v_hat0` for the given measurements.
    static SpeedObserverState with_estimate(double v_hat0, double lambda_hat, double current,
                                            double gamma_v, const PlantParams& prm);
};

struct PositionObserverState {
    double Y_hat = 0.0;
    double gamma_Y = 100.0;
};

double speed_estimate(double chi, double lambda_hat, double current, double gamma_v,
                      const PlantParams& prm);

/// dchi/dt = (1/m)(lambda_hat^2/(2k) - m g) - gamma_v lambda_hat^2 v_hat + 2 gamma_v k i dlambda/dt.
/// `lambda_dot` is the measurable -R i + u.
double speed_observer_rate(double chi, double lambda_hat, double current, double lambda_dot,
                           double gamma_v, const PlantParams& prm);

/// dY_hat/dt = -gamma_Y lambda_hat^2 Y_hat + gamma_Y (c lambda_hat - k i) lambda_hat + v_hat.
double position_observer_rate(double Y_hat, double lambda_hat, double v_hat, double current,
                              double gamma_Y, const PlantParams& prm);

/// Inputs are held over the step.
SpeedObserverState speed_step(SpeedObserverState st, double lambda_hat, double current,
                              double lambda_dot, const PlantParams& prm, double dt);
PositionObserverState position_step(PositionObserverState st, double lambda_hat, double v_hat,
                                    double current, const PlantParams& prm, double dt);

}  // namespace maglev
