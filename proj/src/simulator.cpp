#include "maglev/simulator.hpp"

#include <cmath>
#include <future>
#include <limits>

#include "maglev/controller.hpp"
#include "maglev/drem.hpp"
#include "maglev/observers.hpp"
#include "maglev/regressor.hpp"

namespace maglev {

namespace {

// Closed-loop state layout.
constexpr std::size_t kPlant = 0;
constexpr std::size_t kPsi = 3;
constexpr std::size_t kReg = 4;
constexpr std::size_t kDrem = kReg + RegressorPipeline::kStates;
constexpr std::size_t kChi = kDrem + DremEstimator::kStates;
constexpr std::size_t kYhat = kChi + 1;
constexpr std::size_t kRef = kYhat + 1;
constexpr std::size_t kTotal = kRef + 4;

using Full = StateVec<kTotal>;

template <std::size_t Off, std::size_t N>
std::span<const double, N> seg(const Full& x) {
    return std::span<const double, N>(x.data() + Off, N);
}
template <std::size_t Off, std::size_t N>
std::span<double, N> seg(Full& x) {
    return std::span<double, N>(x.data() + Off, N);
}

class ClosedLoop {
public:
    explicit ClosedLoop(const Scenario& sc)
        : sc_(sc),
          regressor_(RegressorConfig::from(sc.plant, sc.mu, sc.rho)),
          drem_(DremConfig{sc.gamma, sc.drem_nu, sc.drem_kappa}),
          gains_(sc.k0, sc.k1, sc.k2) {}

    Full initial_state() const {
        Full x{};
        const PlantParams& prm = sc_.plant;
        x[kPlant + 0] = sc_.Y0;
        x[kPlant + 1] = prm.m * sc_.Ydot0;
        x[kPlant + 2] = sc_.lambda0();
        x[kPsi] = sc_.psi0;
        const auto d0 = DremEstimator::initial_state(sc_.eta_hat0);
        std::copy(d0.begin(), d0.end(), x.begin() + kDrem);
        const double i0 = output_current({sc_.Y0, x[kPlant + 1], sc_.lambda0()}, prm);
        const double lambda_hat0 = flux_estimate(sc_.psi0, sc_.eta_hat0);
        x[kChi] = SpeedObserverState::with_estimate(sc_.v_hat0, lambda_hat0, i0, sc_.gamma_v, prm).chi;
        x[kYhat] = sc_.Y_hat0;
        // Prefilter starts at zero, except a constant command which starts settled.
        const auto r0 = reference_at_rest(sc_.reference == ReferenceKind::Constant ? sc_.reference_level : 0.0);
        std::copy(r0.stage.begin(), r0.stage.end(), x.begin() + kRef);
        return x;
    }

    struct Snapshot {
        PlantState plant;
        Measurement meas;
        double lambda_hat, v_hat, Y_hat, eta_hat;
        ReferenceSignals ref;
    };

    Snapshot snapshot(const Full& x, double u) const {
        const PlantParams& prm = sc_.plant;
        Snapshot s;
        s.plant = plant_state_from(seg<kPlant, 3>(x));
        s.meas = {output_current(s.plant, prm), u, x[kPsi]};
        s.eta_hat = x[kDrem + DremEstimator::kEtaHat];
        s.lambda_hat = flux_estimate(s.meas.psi, s.eta_hat);
        s.v_hat = speed_estimate(x[kChi], s.lambda_hat, s.meas.current, sc_.gamma_v, prm);
        s.Y_hat = x[kYhat];
        s.ref = reference_signals(seg<kRef, 4>(x), sc_.nu);
        return s;
    }

    ControlOutput control(const Snapshot& s) const {
        if (sc_.mode == ControllerMode::FullState) return full_state_control(s);
        return sensorless_control({s.lambda_hat, s.Y_hat, s.v_hat}, s.ref, gains_, sc_.plant, sc_.eps_lambda);
    }

    ControlOutput full_state_control(const Snapshot& s) const {
        return flc({s.plant.lambda, s.plant.Y, s.plant.velocity(sc_.plant), s.ref}, gains_, sc_.plant,
                   sc_.eps_lambda);
    }

    void rates(double t, const Full& x, double u, Full& dx) const {
        const PlantParams& prm = sc_.plant;
        const Snapshot s = snapshot(x, u);

        const PlantRates pr = plant_rhs(s.plant, u, prm);
        dx[kPlant + 0] = pr.dY;
        dx[kPlant + 1] = pr.dp;
        dx[kPlant + 2] = pr.dlambda;

        const double lambda_dot = pebo_rate(s.meas.current, u, prm.R);
        dx[kPsi] = lambda_dot;

        regressor_.rates(seg<kReg, RegressorPipeline::kStates>(x), s.meas,
                         seg<kReg, RegressorPipeline::kStates>(dx));
        const RegressorSample rs = regressor_.sample(seg<kReg, RegressorPipeline::kStates>(x), s.meas);
        drem_.rates(seg<kDrem, DremEstimator::kStates>(x), rs, seg<kDrem, DremEstimator::kStates>(dx));

        dx[kChi] = speed_observer_rate(x[kChi], s.lambda_hat, s.meas.current, lambda_dot, sc_.gamma_v, prm);
        dx[kYhat] = position_observer_rate(x[kYhat], s.lambda_hat, s.v_hat, s.meas.current, sc_.gamma_Y, prm);

        reference_rates(seg<kRef, 4>(x), raw_reference(sc_.reference, t, sc_.reference_level), sc_.nu,
                        seg<kRef, 4>(dx));
    }

    LogRecord record(double t, const Full& x, const Snapshot& s, const ControlOutput& ctl) const {
        const PlantParams& prm = sc_.plant;
        LogRecord r;
        r.t = t;
        r.Y = s.plant.Y;
        r.v = s.plant.velocity(prm);
        r.lambda = s.plant.lambda;
        r.i = s.meas.current;
        r.u = ctl.u;
        r.psi = s.meas.psi;
        r.eta_hat = s.eta_hat;
        r.lambda_hat = s.lambda_hat;
        r.v_hat = s.v_hat;
        r.Y_hat = s.Y_hat;
        const RegressorSample rs = regressor_.sample(seg<kReg, RegressorPipeline::kStates>(x), s.meas);
        const Mixed mx = drem_.mixed(seg<kDrem, DremEstimator::kStates>(x), rs);
        r.Delta = mx.delta;
        r.Ycal = mx.ycal;
        r.z = rs.z;
        r.phi = rs.phi;
        r.e_lambda = r.lambda_hat - r.lambda;
        r.e_v = r.v_hat - r.v;
        r.e_Y = r.Y_hat - r.Y;
        r.Y_star = s.ref.pos;
        r.dY_star = s.ref.vel;
        r.ddY_star = s.ref.acc;
        r.dddY_star = s.ref.jerk;
        r.excitation = x[kDrem + DremEstimator::kExcitation];
        r.clamp = ctl.clamped;
        r.constraint_violated = r.Y >= prm.c;
        if (sc_.log_delta_u) r.delta_u = ctl.u - full_state_control(s).u;
        return r;
    }

    static const char* bad_subsystem(const Full& x) {
        auto bad = [&](std::size_t from, std::size_t to) {
            for (std::size_t i = from; i < to; ++i) {
                if (!std::isfinite(x[i])) return true;
            }
            return false;
        };
        if (bad(kPlant, kPsi)) return "plant";
        if (bad(kPsi, kReg)) return "pebo";
        if (bad(kReg, kDrem)) return "regressor";
        if (bad(kDrem, kChi)) return "drem";
        if (bad(kChi, kRef)) return "observers";
        if (bad(kRef, kTotal)) return "reference";
        return nullptr;
    }

private:
    const Scenario& sc_;
    RegressorPipeline regressor_;
    DremEstimator drem_;
    FlcGains gains_;
};

struct SettleTracker {
    double tol;
    double last_violation = -std::numeric_limits<double>::infinity();
    bool violating_now = false;

    void observe(double t, double err) {
        violating_now = !(std::abs(err) < tol);
        if (violating_now) last_violation = t;
    }
    double settle_time(double dt) const {
        if (violating_now) return std::numeric_limits<double>::infinity();
        return std::isinf(last_violation) ? 0.0 : last_violation + dt;
    }
};

}  // namespace

namespace {

std::string subsystem_of(const std::string& node) {
    return node.substr(0, node.find('/'));
}

// Fills `out` as it goes so a caller catching NumericAbort still sees the partial log.
void run_into(const Scenario& sc, const StepCallback& on_step, RunResult& out) {
    sc.validate();
    ClosedLoop loop(sc);
    Full x = loop.initial_state();

    const auto steps = static_cast<std::size_t>(std::llround(sc.duration / sc.dt));
    out.log.reserve(steps / static_cast<std::size_t>(sc.decimate) + 2);
    RunMetrics& mt = out.metrics;
    mt.duration = static_cast<double>(steps) * sc.dt;

    SettleTracker st_lambda{sc.settle_tol_lambda}, st_v{sc.settle_tol_v}, st_Y{sc.settle_tol_Y},
        st_track{sc.settle_tol_tracking};
    const std::size_t tail_start = steps - steps / 10;
    double excitation_at_tail = 0.0;

    auto observe = [&](const LogRecord& r) {
        st_lambda.observe(r.t, r.e_lambda);
        st_v.observe(r.t, r.e_v);
        st_Y.observe(r.t, r.e_Y);
        st_track.observe(r.t, r.Y - r.Y_star);
    };

    for (std::size_t n = 0; n < steps; ++n) {
        const double t = static_cast<double>(n) * sc.dt;
        try {
            const auto snap = loop.snapshot(x, 0.0);
            const ControlOutput ctl = loop.control(snap);
            if (!std::isfinite(ctl.u)) throw NumericAbort(t, "controller");

            const LogRecord rec = loop.record(t, x, snap, ctl);
            observe(rec);
            mt.max_abs_u = std::max(mt.max_abs_u, std::abs(ctl.u));
            if (rec.clamp) ++mt.clamp_steps;
            if (rec.constraint_violated) ++mt.constraint_violation_steps;
            if (n == tail_start) excitation_at_tail = rec.excitation;
            if (on_step) on_step(rec);
            if (n % static_cast<std::size_t>(sc.decimate) == 0) out.log.push_back(rec);

            const double u = ctl.u;
            rk4_step(x, t, sc.dt, [&](double tau, const Full& xs, Full& dx) { loop.rates(tau, xs, u, dx); });
        } catch (const NonFiniteSignal& e) {
            throw NumericAbort(t, subsystem_of(e.node()));
        }
        if (const char* bad = ClosedLoop::bad_subsystem(x)) throw NumericAbort(t + sc.dt, bad);
    }

    // Terminal state.
    const auto snap = loop.snapshot(x, 0.0);
    const ControlOutput ctl = loop.control(snap);
    const LogRecord last = loop.record(mt.duration, x, snap, ctl);
    observe(last);
    mt.settle_lambda = st_lambda.settle_time(sc.dt);
    mt.settle_v = st_v.settle_time(sc.dt);
    mt.settle_Y = st_Y.settle_time(sc.dt);
    mt.settle_tracking = st_track.settle_time(sc.dt);
    mt.final_e_lambda = last.e_lambda;
    mt.final_e_v = last.e_v;
    mt.final_e_Y = last.e_Y;
    mt.final_tracking = last.Y - last.Y_star;
    mt.excitation_integral = last.excitation;
    // The excitation integral counts as still growing when its last 10% adds at least 1% of the total.
    const double growth = last.excitation - excitation_at_tail;
    mt.delta_not_l2_plausible = last.excitation > 0.0 && growth >= 0.01 * last.excitation;
}

}  // namespace

RunResult run(const Scenario& sc, const StepCallback& on_step) {
    RunResult out;
    run_into(sc, on_step, out);
    return out;
}

RunResult run_checked(const Scenario& sc, const StepCallback& on_step) {
    RunResult r;
    try {
        run_into(sc, on_step, r);
        return r;
    } catch (const NumericAbort& e) {
        r.metrics.aborted = true;
        r.metrics.abort_time = e.time();
        r.metrics.abort_subsystem = e.subsystem();
        return r;
    }
}

std::vector<SweepRun> sweep(const Scenario& base, const std::string& axis,
                            const std::vector<double>& values, bool keep_logs) {
    (void)base.get(axis);  // rejects unknown axes before launching anything
    std::vector<SweepRun> runs;
    runs.reserve(values.size());
    for (double v : values) {
        SweepRun r;
        r.value = v;
        r.scenario = base;
        r.scenario.set_scalar(axis, v);
        runs.push_back(std::move(r));
    }
    std::vector<std::future<RunResult>> futures;
    for (auto& r : runs) {
        futures.push_back(std::async(std::launch::async, [&r, keep_logs] {
            RunResult res = run_checked(r.scenario);
            if (!keep_logs) res.log.clear();
            return res;
        }));
    }
    for (std::size_t i = 0; i < runs.size(); ++i) runs[i].result = futures[i].get();
    return runs;
}

}  // namespace maglev
