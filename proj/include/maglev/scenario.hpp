#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "maglev/plant.hpp"
#include "maglev/reference.hpp"

namespace maglev {

enum class ControllerMode { FullState, Sensorless };

ControllerMode parse_controller_mode(std::string_view name);
std::string_view to_string(ControllerMode mode);

/// Everything a closed-loop run needs. Defaults are the published simulation set-up
/// for the sinusoidal reference; `preset` switches to the steps set-up.
struct Scenario {
    PlantParams plant;

    ReferenceKind reference = ReferenceKind::Sinusoids;
    double nu = 10.0;               ///< reference prefilter rate
    double reference_level = 0.0;   ///< used by the constant reference

    double gamma = 1.0;             ///< DREM adaptation gain
    double gamma_v = 100.0;
    double gamma_Y = 100.0;
    double k0 = 1000.0, k1 = 300.0, k2 = 30.0;
    double eps_lambda = 1e-3;       ///< flux floor of the controller

    double mu = 10.0;
    double rho = 0.01;
    // kappa_j = 700 nu_j (see DremConfig)
    std::array<double, 4> drem_nu{0.1, 0.3, 3.0, 10.0};
    std::array<double, 4> drem_kappa{70.0, 210.0, 2100.0, 7000.0};

    // Initial conditions. lambda(0) = psi0 + eta.
    double Y0 = -1.0;
    double Ydot0 = 0.5;
    double eta = 0.01;
    double psi0 = 0.0;
    double Y_hat0 = 0.0;
    double v_hat0 = 0.0;
    double eta_hat0 = 1e-4;

    double duration = 20.0;
    double dt = 1e-4;
    ControllerMode mode = ControllerMode::Sensorless;
    int decimate = 10;
    bool log_delta_u = false;

    // Settle-time thresholds for RunMetrics.
    double settle_tol_lambda = 1e-3;
    double settle_tol_v = 1e-2;
    double settle_tol_Y = 1e-2;
    double settle_tol_tracking = 2e-2;

    /// Defaults for the given reference class (nu, gamma, duration).
    static Scenario preset(ReferenceKind kind);

    double lambda0() const { return psi0 + eta; }

    void validate() const;

    /// Sets a field from its config-file key. Throws ConfigError on unknown keys or bad values.
    void set(std::string_view key, std::string_view value);
    /// Reads a scalar field by key. Throws ConfigError if the key is not a scalar field.
    double get(std::string_view key) const;
    void set_scalar(std::string_view key, double value);

    /// Names of all scalar (sweepable) keys.
    static std::vector<std::string> scalar_keys();
};

using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

/// Parses `key = value` lines; `#` starts a comment. Throws ConfigError with the line number.
ConfigEntries parse_config(std::string_view text);
ConfigEntries read_config_file(const std::string& path);

/// Starts from the preset of the reference named in `entries` (overridden by `kind`),
/// then applies every entry in order.
Scenario scenario_from_entries(const ConfigEntries& entries, std::optional<ReferenceKind> kind = {});

/// Writes the scenario back out in config-file syntax.
std::string to_config_text(const Scenario& sc);

}  // namespace maglev
