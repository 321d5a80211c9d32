#pragma once

#include <array>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "maglev/numerics.hpp"
#include "maglev/regressor.hpp"

namespace maglev {

using Mat5 = Eigen::Matrix<double, 5, 5>;
using Vec5 = Eigen::Matrix<double, 5, 1>;

/// Determinants and adjugates by cofactor expansion. Exact structure for
/// singular matrices: no pivoting, no inverse.
double det4(const Eigen::Matrix4d& a);
double det5(const Mat5& a);
Eigen::Matrix4d minor_of(const Mat5& a, int row, int col);
Mat5 adjugate(const Mat5& a);

struct Mixed {
    double delta = 0.0;  ///< det(Phi)
    double ycal = 0.0;   ///< first row of adj(Phi) times Z
};

/// Delta = det(Phi), Y = e1^T adj(Phi) Z, from the five signed cofactors of column 0.
Mixed mix(const Mat5& phi, const Vec5& zvec);

struct DremConfig {
    double gamma = 1.0;
    // kappa_j = 700 nu_j: the rho p/(p+rho) stage leaves Delta near 1e-10, which the gain restores.
    std::array<double, 4> nu{0.1, 0.3, 3.0, 10.0};
    std::array<double, 4> kappa{70.0, 210.0, 2100.0, 7000.0};

    void validate() const;
};

/// lambda_hat = psi + eta_hat.
inline double flux_estimate(double psi, double eta_hat) { return psi + eta_hat; }

/// Regressor extension with four kappa_j/(p+nu_j) filters, determinant mixing and
/// the scalar gradient law d(eta_hat)/dt = gamma Delta (Y - Delta eta_hat).
///
/// Row 0 of Phi is phi^T, row j the j-th filtered copy, so Z = Phi Omega(eta).
class DremEstimator {
public:
    static constexpr std::size_t kFilterStates = 24;  // 4 filters x (z, phi1..phi5)
    static constexpr std::size_t kEtaHat = 24;
    static constexpr std::size_t kExcitation = 25;
    static constexpr std::size_t kStates = 26;
    using State = StateVec<kStates>;
    using ConstView = std::span<const double, kStates>;
    using View = std::span<double, kStates>;

    explicit DremEstimator(const DremConfig& cfg);

    const DremConfig& config() const noexcept { return cfg_; }

    static State initial_state(double eta_hat0);

    void assemble(ConstView x, const RegressorSample& s, Mat5& phi, Vec5& zvec) const;
    Mixed mixed(ConstView x, const RegressorSample& s) const;

    /// Filter, estimator and excitation-integral rates.
    void rates(ConstView x, const RegressorSample& s, View dx) const;

private:
    DremConfig cfg_;
};

/// Stand-alone DREM state advanced in separate extend / mix / update phases.
class DremState {
public:
    explicit DremState(const DremConfig& cfg, double eta_hat0 = 0.0)
        : est_(cfg), x_(DremEstimator::initial_state(eta_hat0)) {}

    /// Advances the extension filters by dt with the sample held; reassembles Phi and Z.
    void extend(const RegressorSample& s, double dt);
    /// Delta and Y for the current Phi and Z.
    Mixed mix() const { return ::maglev::mix(phi_, zvec_); }
    /// Integrates eta_hat over dt with Delta and Y held; accumulates Delta^2 dt.
    void update(double dt);

    double eta_hat() const { return x_[DremEstimator::kEtaHat]; }
    double excitation_integral() const { return x_[DremEstimator::kExcitation]; }
    const Mat5& phi() const { return phi_; }
    const Vec5& zvec() const { return zvec_; }

private:
    DremEstimator est_;
    DremEstimator::State x_;
    Mat5 phi_ = Mat5::Zero();
    Vec5 zvec_ = Vec5::Zero();
};

struct LtvSample {
    double t;
    double x;
};

/// Integrates dx/dt = -a2(t) x + b(t) with fixed-step RK4, recording every `record_every` steps.
std::vector<LtvSample> simulate_scalar_ltv(const std::function<double(double)>& a2,
                                           const std::function<double(double)>& b, double x0,
                                           double t_end, double dt, std::size_t record_every = 1);

}  // namespace maglev
