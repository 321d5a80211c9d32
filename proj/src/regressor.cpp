#include "maglev/regressor.hpp"

#include <string>

#include "maglev/filters.hpp"

namespace maglev {

namespace {

// State layout.
constexpr std::size_t kLagY = 0;     // lag state of the derivative filter producing omega1
constexpr std::size_t kOmega2 = 1;
constexpr std::size_t kA1 = 2;       // W[y (u - R y)]
constexpr std::size_t kB1 = 3;       // (1/(p+mu))[(u - R y) omega1]
constexpr std::size_t kR2 = 4;
constexpr std::size_t kPhi1 = 5;     // 3 coefficients
constexpr std::size_t kPhi2 = 8;     // 3
constexpr std::size_t kF1 = 11;      // W[G phi1], 5
constexpr std::size_t kF2 = 16;      // W^2[G phi1], 5
constexpr std::size_t kH = 21;       // W[G phi2], 5
constexpr std::size_t kOut = 26;     // rho-derivative lag states for z0, phi0_1..5
static_assert(kOut + 6 == RegressorPipeline::kStates);

EtaPoly read_poly(std::span<const double, RegressorPipeline::kStates> x, std::size_t at, int degree) {
    EtaPoly::Coeffs c{};
    for (int d = 0; d <= degree; ++d) c[d] = x[at + d];
    return EtaPoly(c, degree);
}

void check_measurement(const Measurement& meas) {
    require_finite(meas.current, "regressor/input/current");
    require_finite(meas.voltage, "regressor/input/voltage");
    require_finite(meas.psi, "regressor/input/psi");
}

}  // namespace

PeboState pebo_step(PeboState st, double current, double voltage, double R, double dt) {
    require_positive_step(dt);
    require_finite(current, "pebo/current");
    require_finite(voltage, "pebo/voltage");
    StateVec<1> x{st.psi};
    rk4_step(x, 0.0, dt, [&](double, const StateVec<1>&, StateVec<1>& dx) {
        dx[0] = pebo_rate(current, voltage, R);
    });
    return {x[0]};
}

void RegressorConfig::validate() const {
    if (!(mu > 0.0)) throw ConfigError("regressor: mu must be > 0");
    if (!(rho > 0.0)) throw ConfigError("regressor: rho must be > 0");
    PlantParams{m, k, R, 0.005, g}.validate();
}

std::array<double, 5> omega_of(double eta) {
    std::array<double, 5> out{};
    double p = 1.0;
    for (double& o : out) {
        p *= eta;
        o = p;
    }
    return out;
}

double regression_residual(const RegressorSample& s, double eta) {
    const auto omega = omega_of(eta);
    double r = s.z;
    for (std::size_t d = 0; d < 5; ++d) r -= s.phi[d] * omega[d];
    return r;
}

double raw_regression_residual(const RegressorSample& s, double eta) {
    const auto omega = omega_of(eta);
    double r = s.z0 - s.eta6 * omega[4] * eta;
    for (std::size_t d = 0; d < 5; ++d) r -= s.phi0[d] * omega[d];
    return r;
}

struct RegressorPipeline::Eval {
    double y, v, psi;
    SwapSignals swap;
    EtaPoly phi1, phi2, g_phi1, g_phi2, f1, f2, h;
    EtaPoly x3sq;
};

RegressorPipeline::RegressorPipeline(const RegressorConfig& cfg) : cfg_(cfg) { cfg_.validate(); }

EtaPoly RegressorPipeline::phi1(ConstView x) const { return read_poly(x, kPhi1, 2); }
EtaPoly RegressorPipeline::phi2(ConstView x) const { return read_poly(x, kPhi2, 2); }

RegressorPipeline::Eval RegressorPipeline::evaluate(ConstView x, const Measurement& meas) const {
    const double mu = cfg_.mu;
    Eval e;
    e.y = meas.current;
    e.v = meas.voltage - cfg_.R * meas.current;
    e.psi = meas.psi;

    e.swap.omega1 = derivative_output(x[kLagY], e.y, mu, mu);
    e.swap.omega2 = x[kOmega2];
    e.swap.r1 = x[kA1] - e.psi * e.swap.omega1 + x[kB1];
    e.swap.r2 = x[kR2];

    // (psi + eta)^2 and G = (psi + eta)^2 - 2mgk
    EtaPoly::Coeffs sq{};
    sq[0] = e.psi * e.psi;
    sq[1] = 2.0 * e.psi;
    sq[2] = 1.0;
    e.x3sq = EtaPoly(sq, 2);
    EtaPoly g = e.x3sq;
    g.coeff(0) -= 2.0 * cfg_.m * cfg_.g * cfg_.k;

    e.phi1 = read_poly(x, kPhi1, 2);
    e.phi2 = read_poly(x, kPhi2, 2);
    e.g_phi1 = g * e.phi1;
    e.g_phi2 = g * e.phi2;
    e.f1 = read_poly(x, kF1, 4);
    e.f2 = read_poly(x, kF2, 4);
    e.h = read_poly(x, kH, 4);
    return e;
}

void RegressorPipeline::rates(ConstView x, const Measurement& meas, View dx) const {
    check_measurement(meas);
    const double mu = cfg_.mu;
    const Eval e = evaluate(x, meas);

    dx[kLagY] = -mu * x[kLagY] + e.y;
    dx[kOmega2] = mu * (e.swap.omega1 - x[kOmega2]);
    dx[kA1] = mu * (e.y * e.v - x[kA1]);
    dx[kB1] = -mu * x[kB1] + e.v * e.swap.omega1;
    dx[kR2] = mu * (cfg_.k * cfg_.m * e.swap.r1 - x[kR2]);

    for (int d = 0; d <= 2; ++d) {
        dx[kPhi1 + d] = mu * (e.x3sq[d] - x[kPhi1 + d]);
        dx[kPhi2 + d] = mu * (x[kPhi1 + d] - x[kPhi2 + d]);
    }
    for (int d = 0; d <= 4; ++d) {
        dx[kF1 + d] = mu * (e.g_phi1[d] - x[kF1 + d]);
        dx[kF2 + d] = mu * (x[kF1 + d] - x[kF2 + d]);
        dx[kH + d] = mu * (e.g_phi2[d] - x[kH + d]);
    }

    const RegressorSample raw = sample(x, meas);
    dx[kOut] = -cfg_.rho * x[kOut] + raw.z0;
    for (std::size_t d = 0; d < 5; ++d) dx[kOut + 1 + d] = -cfg_.rho * x[kOut + 1 + d] + raw.phi0[d];
}

SwapSignals RegressorPipeline::swap_signals(ConstView x, const Measurement& meas) const {
    return evaluate(x, meas).swap;
}

RegressorSample RegressorPipeline::sample(ConstView x, const Measurement& meas) const {
    const double mu = cfg_.mu;
    const double k = cfg_.k;
    const double m = cfg_.m;
    const double rho = cfg_.rho;
    const Eval e = evaluate(x, meas);

    const EtaPoly lhs = (k * m * e.swap.r1) * e.phi2 - e.swap.r2 * e.phi1;
    const EtaPoly cross = e.swap.omega1 * e.phi2 - e.swap.omega2 * e.phi1;
    const EtaPoly rhs = (2.0 * k * k * m * mu) * cross.shifted(1) - e.phi2 * e.f1 + e.phi1 * e.h +
                        e.phi1 * e.f2;
    const EtaPoly scaled_lhs = (2.0 * k * mu) * lhs;

    RegressorSample s;
    s.z0 = scaled_lhs[0] - rhs[0];
    for (int d = 1; d <= 5; ++d) s.phi0[d - 1] = rhs[d] - scaled_lhs[d];
    s.eta6 = rhs[6];

    s.z = derivative_output(x[kOut], s.z0, rho, rho);
    for (std::size_t d = 0; d < 5; ++d) s.phi[d] = derivative_output(x[kOut + 1 + d], s.phi0[d], rho, rho);

    require_finite(s.z, "regressor/z");
    static constexpr const char* kPhiNames[5] = {"regressor/phi1", "regressor/phi2", "regressor/phi3",
                                                 "regressor/phi4", "regressor/phi5"};
    for (std::size_t d = 0; d < 5; ++d) require_finite(s.phi[d], kPhiNames[d]);
    return s;
}

SwapSignals RegressorBank::advance(const Measurement& meas, double dt) {
    require_positive_step(dt);
    rk4_step(state_, 0.0, dt, [&](double, const RegressorPipeline::State& x, RegressorPipeline::State& dx) {
        pipeline_.rates(x, meas, dx);
    });
    return pipeline_.swap_signals(state_, meas);
}

}  // namespace maglev
