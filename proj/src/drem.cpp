#include "maglev/drem.hpp"

namespace maglev {

double det4(const Eigen::Matrix4d& a) {
    // Laplace expansion along the first two rows using 2x2 minors.
    const double s0 = a(0, 0) * a(1, 1) - a(1, 0) * a(0, 1);
    const double s1 = a(0, 0) * a(1, 2) - a(1, 0) * a(0, 2);
    const double s2 = a(0, 0) * a(1, 3) - a(1, 0) * a(0, 3);
    const double s3 = a(0, 1) * a(1, 2) - a(1, 1) * a(0, 2);
    const double s4 = a(0, 1) * a(1, 3) - a(1, 1) * a(0, 3);
    const double s5 = a(0, 2) * a(1, 3) - a(1, 2) * a(0, 3);

    const double c5 = a(2, 2) * a(3, 3) - a(3, 2) * a(2, 3);
    const double c4 = a(2, 1) * a(3, 3) - a(3, 1) * a(2, 3);
    const double c3 = a(2, 1) * a(3, 2) - a(3, 1) * a(2, 2);
    const double c2 = a(2, 0) * a(3, 3) - a(3, 0) * a(2, 3);
    const double c1 = a(2, 0) * a(3, 2) - a(3, 0) * a(2, 2);
    const double c0 = a(2, 0) * a(3, 1) - a(3, 0) * a(2, 1);

    return s0 * c5 - s1 * c4 + s2 * c3 + s3 * c2 - s4 * c1 + s5 * c0;
}

Eigen::Matrix4d minor_of(const Mat5& a, int row, int col) {
    Eigen::Matrix4d m;
    for (int i = 0, mi = 0; i < 5; ++i) {
        if (i == row) continue;
        for (int j = 0, mj = 0; j < 5; ++j) {
            if (j == col) continue;
            m(mi, mj++) = a(i, j);
        }
        ++mi;
    }
    return m;
}

double det5(const Mat5& a) {
    double d = 0.0;
    for (int j = 0; j < 5; ++j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        d += sign * a(j, 0) * det4(minor_of(a, j, 0));
    }
    return d;
}

Mat5 adjugate(const Mat5& a) {
    Mat5 adj;
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            adj(i, j) = sign * det4(minor_of(a, j, i));
        }
    }
    return adj;
}

Mixed mix(const Mat5& phi, const Vec5& zvec) {
    Mixed out;
    for (int j = 0; j < 5; ++j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        const double cof = sign * det4(minor_of(phi, j, 0));
        out.delta += phi(j, 0) * cof;
        out.ycal += cof * zvec(j);
    }
    return out;
}

void DremConfig::validate() const {
    if (!(gamma > 0.0)) throw ConfigError("drem: gamma must be > 0");
    for (std::size_t j = 0; j < 4; ++j) {
        if (!(nu[j] > 0.0)) throw ConfigError("drem: filter poles nu_j must be > 0");
        if (!(kappa[j] > 0.0)) throw ConfigError("drem: filter gains kappa_j must be > 0");
        for (std::size_t l = 0; l < j; ++l) {
            // Equal poles give proportional rows and Delta = 0 identically.
            if (nu[j] == nu[l]) {
                throw ConfigError("drem: the four filter poles nu_j must be distinct");
            }
        }
    }
}

DremEstimator::DremEstimator(const DremConfig& cfg) : cfg_(cfg) { cfg_.validate(); }

DremEstimator::State DremEstimator::initial_state(double eta_hat0) {
    State x{};
    x[kEtaHat] = eta_hat0;
    return x;
}

void DremEstimator::assemble(ConstView x, const RegressorSample& s, Mat5& phi, Vec5& zvec) const {
    zvec(0) = s.z;
    for (int c = 0; c < 5; ++c) phi(0, c) = s.phi[c];
    for (int j = 0; j < 4; ++j) {
        const double kappa = cfg_.kappa[j];
        zvec(j + 1) = kappa * x[j * 6];
        for (int c = 0; c < 5; ++c) phi(j + 1, c) = kappa * x[j * 6 + 1 + c];
    }
}

Mixed DremEstimator::mixed(ConstView x, const RegressorSample& s) const {
    Mat5 phi;
    Vec5 zvec;
    assemble(x, s, phi, zvec);
    return mix(phi, zvec);
}

void DremEstimator::rates(ConstView x, const RegressorSample& s, View dx) const {
    for (int j = 0; j < 4; ++j) {
        const double nu = cfg_.nu[j];
        dx[j * 6] = -nu * x[j * 6] + s.z;
        for (int c = 0; c < 5; ++c) dx[j * 6 + 1 + c] = -nu * x[j * 6 + 1 + c] + s.phi[c];
    }
    const Mixed mx = mixed(x, s);
    dx[kEtaHat] = cfg_.gamma * mx.delta * (mx.ycal - mx.delta * x[kEtaHat]);
    dx[kExcitation] = mx.delta * mx.delta;
}

void DremState::extend(const RegressorSample& s, double dt) {
    require_positive_step(dt);
    require_finite(s.z, "drem/z");
    for (double p : s.phi) require_finite(p, "drem/phi");
    const auto& cfg = est_.config();
    StateVec<24> f{};
    std::copy_n(x_.begin(), 24, f.begin());
    rk4_step(f, 0.0, dt, [&](double, const StateVec<24>& v, StateVec<24>& dv) {
        for (int j = 0; j < 4; ++j) {
            dv[j * 6] = -cfg.nu[j] * v[j * 6] + s.z;
            for (int c = 0; c < 5; ++c) dv[j * 6 + 1 + c] = -cfg.nu[j] * v[j * 6 + 1 + c] + s.phi[c];
        }
    });
    std::copy_n(f.begin(), 24, x_.begin());
    est_.assemble(x_, s, phi_, zvec_);
}

void DremState::update(double dt) {
    require_positive_step(dt);
    const Mixed mx = mix();
    const double gamma = est_.config().gamma;
    StateVec<1> e{x_[DremEstimator::kEtaHat]};
    rk4_step(e, 0.0, dt, [&](double, const StateVec<1>& v, StateVec<1>& dv) {
        dv[0] = gamma * mx.delta * (mx.ycal - mx.delta * v[0]);
    });
    x_[DremEstimator::kEtaHat] = e[0];
    x_[DremEstimator::kExcitation] += mx.delta * mx.delta * dt;
}

std::vector<LtvSample> simulate_scalar_ltv(const std::function<double(double)>& a2,
                                           const std::function<double(double)>& b, double x0,
                                           double t_end, double dt, std::size_t record_every) {
    require_positive_step(dt);
    if (record_every == 0) record_every = 1;
    const auto steps = static_cast<std::size_t>(std::llround(t_end / dt));
    std::vector<LtvSample> out;
    out.reserve(steps / record_every + 2);
    StateVec<1> x{x0};
    out.push_back({0.0, x0});
    for (std::size_t n = 0; n < steps; ++n) {
        const double t = static_cast<double>(n) * dt;
        rk4_step(x, t, dt, [&](double tau, const StateVec<1>& v, StateVec<1>& dv) {
            dv[0] = -a2(tau) * v[0] + b(tau);
        });
        if ((n + 1) % record_every == 0 || n + 1 == steps) {
            out.push_back({static_cast<double>(n + 1) * dt, x[0]});
        }
    }
    return out;
}

}  // namespace maglev
