#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "maglev/csv.hpp"
#include "maglev/drem.hpp"
#include "maglev/errors.hpp"
#include "maglev/plant.hpp"
#include "maglev/regressor.hpp"
#include "maglev/scenario.hpp"
#include "maglev/simulator.hpp"

namespace py = pybind11;
using namespace maglev;

namespace {

// Column-major copy of the log: {name: ndarray}.
py::dict log_to_dict(const std::vector<LogRecord>& log, bool with_delta_u) {
    const auto cols = log_columns(with_delta_u);
    std::vector<py::array_t<double>> arrays;
    std::vector<double*> ptrs;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        arrays.emplace_back(static_cast<py::ssize_t>(log.size()));
        ptrs.push_back(arrays.back().mutable_data());
    }
    for (std::size_t n = 0; n < log.size(); ++n) {
        const LogRecord& r = log[n];
        const double row[] = {r.t,         r.Y,         r.v,          r.lambda,   r.i,
                              r.u,         r.psi,       r.eta_hat,    r.lambda_hat, r.v_hat,
                              r.Y_hat,     r.Delta,     r.Ycal,       r.z,        r.phi[0],
                              r.phi[1],    r.phi[2],    r.phi[3],     r.phi[4],   r.e_lambda,
                              r.e_v,       r.e_Y,       r.Y_star,     r.dY_star,  r.ddY_star,
                              r.dddY_star, r.excitation, r.clamp ? 1.0 : 0.0, r.constraint_violated ? 1.0 : 0.0,
                              r.delta_u};
        for (std::size_t c = 0; c < cols.size(); ++c) ptrs[c][n] = row[c];
    }
    py::dict out;
    for (std::size_t c = 0; c < cols.size(); ++c) out[py::str(cols[c])] = arrays[c];
    return out;
}

py::dict metrics_to_dict(const RunMetrics& m) {
    py::dict d;
    d["duration"] = m.duration;
    d["settle_lambda"] = m.settle_lambda;
    d["settle_v"] = m.settle_v;
    d["settle_Y"] = m.settle_Y;
    d["settle_tracking"] = m.settle_tracking;
    d["final_e_lambda"] = m.final_e_lambda;
    d["final_e_v"] = m.final_e_v;
    d["final_e_Y"] = m.final_e_Y;
    d["final_tracking"] = m.final_tracking;
    d["max_abs_u"] = m.max_abs_u;
    d["excitation_integral"] = m.excitation_integral;
    d["delta_not_l2_plausible"] = m.delta_not_l2_plausible;
    d["clamp_steps"] = m.clamp_steps;
    d["constraint_violation_steps"] = m.constraint_violation_steps;
    d["aborted"] = m.aborted;
    d["abort_time"] = m.abort_time;
    d["abort_subsystem"] = m.abort_subsystem;
    return d;
}

py::dict result_to_dict(const RunResult& r, bool with_delta_u) {
    py::dict d;
    d["log"] = log_to_dict(r.log, with_delta_u);
    d["metrics"] = metrics_to_dict(r.metrics);
    return d;
}

void set_item(Scenario& sc, const std::string& key, const py::object& value) {
    if (py::isinstance<py::str>(value)) {
        sc.set(key, value.cast<std::string>());
    } else if (py::isinstance<py::bool_>(value)) {
        sc.set(key, value.cast<bool>() ? "true" : "false");
    } else if (key == "decimate") {
        sc.set(key, std::to_string(value.cast<long long>()));
    } else {
        sc.set_scalar(key, value.cast<double>());
    }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Sensorless levitated-ball simulation: plant, PEBO regressor, DREM, observers, FLC.";

    // Translators run newest first, so the base class goes in first.
    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);
    py::register_exception<NonFiniteSignal>(m, "NonFiniteSignal", PyExc_ArithmeticError);
    py::register_exception<NumericAbort>(m, "NumericAbort", PyExc_ArithmeticError);

    py::class_<PlantParams>(m, "PlantParams")
        .def(py::init<>())
        .def_readwrite("m", &PlantParams::m)
        .def_readwrite("k", &PlantParams::k)
        .def_readwrite("R", &PlantParams::R)
        .def_readwrite("c", &PlantParams::c)
        .def_readwrite("g", &PlantParams::g);

    m.def("output_current",
          [](double Y, double p, double lam, const PlantParams& prm) { return output_current({Y, p, lam}, prm); },
          py::arg("Y"), py::arg("p"), py::arg("lam"), py::arg("plant") = PlantParams{});
    m.def(
        "plant_rhs",
        [](double Y, double p, double lam, double u, const PlantParams& prm) {
            const PlantRates r = plant_rhs({Y, p, lam}, u, prm);
            return py::make_tuple(r.dY, r.dp, r.dlambda);
        },
        py::arg("Y"), py::arg("p"), py::arg("lam"), py::arg("u"), py::arg("plant") = PlantParams{},
        "(dY, dp, dlambda)");
    m.def(
        "equilibrium",
        [](double Y_star, const PlantParams& prm) {
            const Equilibrium e = equilibrium(Y_star, prm);
            return py::make_tuple(e.state.lambda, e.voltage);
        },
        py::arg("Y_star") = 0.0, py::arg("plant") = PlantParams{}, "(lambda*, u*)");

    m.def("omega", &omega_of, py::arg("eta"));
    m.def(
        "regression_residual",
        [](double z, const std::array<double, 5>& phi, double eta) {
            RegressorSample s;
            s.z = z;
            s.phi = phi;
            return regression_residual(s, eta);
        },
        py::arg("z"), py::arg("phi"), py::arg("eta"));

    m.def("det5", &det5, py::arg("a"));
    m.def("adjugate", &adjugate, py::arg("a"));
    m.def(
        "mix",
        [](const Mat5& phi, const Vec5& z) {
            const Mixed r = mix(phi, z);
            return py::make_tuple(r.delta, r.ycal);
        },
        py::arg("phi"), py::arg("z"), "(Delta, Y)");
    m.def(
        "simulate_scalar_ltv",
        [](const std::function<double(double)>& a2, const std::function<double(double)>& b, double x0,
           double t_end, double dt, std::size_t record_every) {
            const auto traj = simulate_scalar_ltv(a2, b, x0, t_end, dt, record_every);
            py::array_t<double> t(static_cast<py::ssize_t>(traj.size())), x(static_cast<py::ssize_t>(traj.size()));
            for (std::size_t n = 0; n < traj.size(); ++n) {
                t.mutable_data()[n] = traj[n].t;
                x.mutable_data()[n] = traj[n].x;
            }
            return py::make_tuple(t, x);
        },
        py::arg("a2"), py::arg("b"), py::arg("x0"), py::arg("t_end"), py::arg("dt"), py::arg("record_every") = 1,
        "Integrates dx/dt = -a2(t) x + b(t); returns (t, x).");

    py::class_<Scenario>(m, "Scenario")
        .def(py::init([](const std::string& reference) { return Scenario::preset(parse_reference_kind(reference)); }),
             py::arg("reference") = "sin")
        .def_static("from_config",
                    [](const std::string& text) { return scenario_from_entries(parse_config(text)); },
                    py::arg("text"))
        .def_static("from_file",
                    [](const std::string& path) { return scenario_from_entries(read_config_file(path)); },
                    py::arg("path"))
        .def("to_config", [](const Scenario& sc) { return to_config_text(sc); })
        .def("validate", &Scenario::validate)
        .def("__getitem__", [](const Scenario& sc, const std::string& key) { return sc.get(key); })
        .def("__setitem__", &set_item)
        .def_static("keys", &Scenario::scalar_keys)
        .def_property(
            "reference", [](const Scenario& sc) { return std::string(to_string(sc.reference)); },
            [](Scenario& sc, const std::string& v) { sc.reference = parse_reference_kind(v); })
        .def_property(
            "mode", [](const Scenario& sc) { return std::string(to_string(sc.mode)); },
            [](Scenario& sc, const std::string& v) { sc.mode = parse_controller_mode(v); })
        .def_readwrite("decimate", &Scenario::decimate)
        .def_readwrite("log_delta_u", &Scenario::log_delta_u)
        .def_readwrite("plant", &Scenario::plant)
        .def("__repr__", [](const Scenario& sc) {
            return "<Scenario " + std::string(to_string(sc.reference)) + " " + std::string(to_string(sc.mode)) + ">";
        });

    m.def(
        "run",
        [](const Scenario& sc) {
            RunResult r;
            {
                py::gil_scoped_release release;
                r = run_checked(sc);
            }
            return result_to_dict(r, sc.log_delta_u);
        },
        py::arg("scenario"), "Closed-loop run; returns {'log': {column: ndarray}, 'metrics': {...}}.");
    m.def(
        "sweep",
        [](const Scenario& base, const std::string& axis, const std::vector<double>& values, bool keep_logs) {
            std::vector<SweepRun> runs;
            {
                py::gil_scoped_release release;
                runs = sweep(base, axis, values, keep_logs);
            }
            py::list out;
            for (const auto& r : runs) {
                py::dict d = result_to_dict(r.result, r.scenario.log_delta_u);
                d["value"] = r.value;
                out.append(d);
            }
            return out;
        },
        py::arg("scenario"), py::arg("axis"), py::arg("values"), py::arg("keep_logs") = true);

    m.def("log_columns", &log_columns, py::arg("with_delta_u") = false);
    m.def("metrics_columns", &metrics_columns);
}
