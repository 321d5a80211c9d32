#include "maglev/observers.hpp"

namespace maglev {

SpeedObserverState SpeedObserverState::with_estimate(double v_hat0, double lambda_hat, double current,
                                                     double gamma_v, const PlantParams& prm) {
    SpeedObserverState st;
    st.gamma_v = gamma_v;
    st.chi = v_hat0 + gamma_v * prm.k * current * lambda_hat;
    st.v_hat = v_hat0;
    return st;
}

double speed_estimate(double chi, double lambda_hat, double current, double gamma_v,
                      const PlantParams& prm) {
    return chi - gamma_v * prm.k * current * lambda_hat;
}

double speed_observer_rate(double chi, double lambda_hat, double current, double lambda_dot,
                           double gamma_v, const PlantParams& prm) {
    const double l2 = lambda_hat * lambda_hat;
    const double v_hat = speed_estimate(chi, lambda_hat, current, gamma_v, prm);
    return (l2 / (2.0 * prm.k) - prm.m * prm.g) / prm.m - gamma_v * l2 * v_hat +
           2.0 * gamma_v * prm.k * current * lambda_dot;
}

double position_observer_rate(double Y_hat, double lambda_hat, double v_hat, double current,
                              double gamma_Y, const PlantParams& prm) {
    return -gamma_Y * lambda_hat * lambda_hat * Y_hat +
           gamma_Y * (prm.c * lambda_hat - prm.k * current) * lambda_hat + v_hat;
}

SpeedObserverState speed_step(SpeedObserverState st, double lambda_hat, double current,
                              double lambda_dot, const PlantParams& prm, double dt) {
    require_positive_step(dt);
    require_finite(lambda_hat, "speed_observer/lambda_hat");
    require_finite(current, "speed_observer/current");
    require_finite(lambda_dot, "speed_observer/lambda_dot");
    StateVec<1> x{st.chi};
    rk4_step(x, 0.0, dt, [&](double, const StateVec<1>& v, StateVec<1>& dv) {
        dv[0] = speed_observer_rate(v[0], lambda_hat, current, lambda_dot, st.gamma_v, prm);
    });
    st.chi = x[0];
    st.v_hat = speed_estimate(st.chi, lambda_hat, current, st.gamma_v, prm);
    require_finite(st.v_hat, "speed_observer/v_hat");
    return st;
}

PositionObserverState position_step(PositionObserverState st, double lambda_hat, double v_hat,
                                    double current, const PlantParams& prm, double dt) {
    require_positive_step(dt);
    require_finite(lambda_hat, "position_observer/lambda_hat");
    require_finite(v_hat, "position_observer/v_hat");
    require_finite(current, "position_observer/current");
    StateVec<1> x{st.Y_hat};
    rk4_step(x, 0.0, dt, [&](double, const StateVec<1>& v, StateVec<1>& dv) {
        dv[0] = position_observer_rate(v[0], lambda_hat, v_hat, current, st.gamma_Y, prm);
    });
    st.Y_hat = x[0];
    require_finite(st.Y_hat, "position_observer/Y_hat");
    return st;
}

}  // namespace maglev
