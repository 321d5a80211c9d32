#pragma once

#include <array>

#include "maglev/eta_poly.hpp"
#include "maglev/numerics.hpp"
#include "maglev/plant.hpp"

namespace maglev {

/// The only signals the flux observer is allowed to see.
struct Measurement {
    double current = 0.0;  ///< y = i
    double voltage = 0.0;  ///< u
    double psi = 0.0;      ///< integrated flux proxy
};

/// PEBO flux integrator: dpsi/dt = -R i + u. lambda - psi stays equal to eta.
struct PeboState {
    double psi = 0.0;
};

inline double pebo_rate(double current, double voltage, double R) { return -R * current + voltage; }

/// Advances psi by dt with (i, u) held over the step.
PeboState pebo_step(PeboState st, double current, double voltage, double R, double dt);

struct RegressorConfig {
    double mu = 10.0;   ///< pole of W(p) = mu/(p+mu)
    double rho = 0.01;  ///< pole of the final rho p/(p+rho) filter
    double m = 0.0844;
    double k = 1.0;
    double R = 2.52;
    double g = 9.81;

    static RegressorConfig from(const PlantParams& prm, double mu, double rho) {
        return {mu, rho, prm.m, prm.k, prm.R, prm.g};
    }
    void validate() const;
};

/// Measurable auxiliary signals of the swapping-lemma network.
struct SwapSignals {
    double omega1 = 0.0;  ///< (mu p/(p+mu))[y]
    double omega2 = 0.0;  ///< W[omega1]
    double r1 = 0.0;      ///< W[y(u-Ry)] - psi*omega1 + (1/(p+mu))[(u-Ry) omega1]
    double r2 = 0.0;      ///< W[k m r1]
};

/// z = phi^T Omega(eta), Omega = (eta, ..., eta^5). Raw values before the derivative filter too.
struct RegressorSample {
    double z = 0.0;
    std::array<double, 5> phi{};
    double z0 = 0.0;
    std::array<double, 5> phi0{};
    double eta6 = 0.0;  ///< coefficient of eta^6 in the raw model; tends to one
};

/// Omega(eta) = col(eta, eta^2, eta^3, eta^4, eta^5).
std::array<double, 5> omega_of(double eta);

/// z - phi^T Omega(eta).
double regression_residual(const RegressorSample& s, double eta);

/// Same check on the raw (unfiltered) model, including the eta^6 term.
double raw_regression_residual(const RegressorSample& s, double eta);

/// Filter network turning (i, u, psi) into the nonlinear regression for eta.
///
/// Stateless: the filter states live in a caller-owned vector so the pipeline
/// can be advanced on the same clock as the plant. The construction keeps every
/// quantity that depends on eta as an EtaPoly whose coefficients are filtered
/// independently, then reads z0 and phi0 off the coefficients of
///
///   2k mu (k m r1 phi2 - r2 phi1)
///     = eta 2k^2 m mu (omega1 phi2 - omega2 phi1)
///       - phi2 W[G phi1] + phi1 W[G phi2] + phi1 W^2[G phi1],
///
/// with phi1 = W[(psi+eta)^2], phi2 = W[phi1], G = (psi+eta)^2 - 2mgk.
class RegressorPipeline {
public:
    static constexpr std::size_t kStates = 32;
    using State = StateVec<kStates>;
    using ConstView = std::span<const double, kStates>;
    using View = std::span<double, kStates>;

    explicit RegressorPipeline(const RegressorConfig& cfg);

    const RegressorConfig& config() const noexcept { return cfg_; }

    void rates(ConstView x, const Measurement& meas, View dx) const;
    SwapSignals swap_signals(ConstView x, const Measurement& meas) const;
    RegressorSample sample(ConstView x, const Measurement& meas) const;

    /// phi1 = W[(psi+eta)^2] and phi2 = W[phi1] as eta polynomials.
    EtaPoly phi1(ConstView x) const;
    EtaPoly phi2(ConstView x) const;

private:
    struct Eval;
    Eval evaluate(ConstView x, const Measurement& meas) const;

    RegressorConfig cfg_;
};

/// A pipeline together with its own state, advanced with held measurements.
class RegressorBank {
public:
    explicit RegressorBank(const RegressorConfig& cfg) : pipeline_(cfg) {}

    /// Advances every node by dt; returns the swap signals at the end of the step.
    SwapSignals advance(const Measurement& meas, double dt);
    RegressorSample sample(const Measurement& meas) const { return pipeline_.sample(state_, meas); }
    SwapSignals swap_signals(const Measurement& meas) const { return pipeline_.swap_signals(state_, meas); }

    const RegressorPipeline& pipeline() const noexcept { return pipeline_; }
    const RegressorPipeline::State& state() const noexcept { return state_; }

private:
    RegressorPipeline pipeline_;
    RegressorPipeline::State state_{};
};

}  // namespace maglev
