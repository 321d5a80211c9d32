#include "maglev/scenario.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "maglev/errors.hpp"

namespace maglev {

namespace {

using Accessor = double& (*)(Scenario&);

struct ScalarKey {
    const char* name;
    Accessor get;
};

#define MAGLEV_KEY(NAME, EXPR) ScalarKey{NAME, [](Scenario& s) -> double& { return EXPR; }}

const std::array kScalarKeys = {
    MAGLEV_KEY("m", s.plant.m),
    MAGLEV_KEY("k", s.plant.k),
    MAGLEV_KEY("R", s.plant.R),
    MAGLEV_KEY("c", s.plant.c),
    MAGLEV_KEY("g", s.plant.g),
    MAGLEV_KEY("nu", s.nu),
    MAGLEV_KEY("reference_level", s.reference_level),
    MAGLEV_KEY("gamma", s.gamma),
    MAGLEV_KEY("gamma_v", s.gamma_v),
    MAGLEV_KEY("gamma_Y", s.gamma_Y),
    MAGLEV_KEY("k0", s.k0),
    MAGLEV_KEY("k1", s.k1),
    MAGLEV_KEY("k2", s.k2),
    MAGLEV_KEY("eps_lambda", s.eps_lambda),
    MAGLEV_KEY("mu", s.mu),
    MAGLEV_KEY("rho", s.rho),
    MAGLEV_KEY("drem_nu1", s.drem_nu[0]),
    MAGLEV_KEY("drem_nu2", s.drem_nu[1]),
    MAGLEV_KEY("drem_nu3", s.drem_nu[2]),
    MAGLEV_KEY("drem_nu4", s.drem_nu[3]),
    MAGLEV_KEY("drem_kappa1", s.drem_kappa[0]),
    MAGLEV_KEY("drem_kappa2", s.drem_kappa[1]),
    MAGLEV_KEY("drem_kappa3", s.drem_kappa[2]),
    MAGLEV_KEY("drem_kappa4", s.drem_kappa[3]),
    MAGLEV_KEY("Y0", s.Y0),
    MAGLEV_KEY("Ydot0", s.Ydot0),
    MAGLEV_KEY("eta", s.eta),
    MAGLEV_KEY("psi0", s.psi0),
    MAGLEV_KEY("Y_hat0", s.Y_hat0),
    MAGLEV_KEY("v_hat0", s.v_hat0),
    MAGLEV_KEY("eta_hat0", s.eta_hat0),
    MAGLEV_KEY("duration", s.duration),
    MAGLEV_KEY("dt", s.dt),
    MAGLEV_KEY("settle_tol_lambda", s.settle_tol_lambda),
    MAGLEV_KEY("settle_tol_v", s.settle_tol_v),
    MAGLEV_KEY("settle_tol_Y", s.settle_tol_Y),
    MAGLEV_KEY("settle_tol_tracking", s.settle_tol_tracking),
};

#undef MAGLEV_KEY

const ScalarKey* find_scalar(std::string_view key) {
    for (const auto& k : kScalarKeys) {
        if (key == k.name) return &k;
    }
    return nullptr;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError("invalid number '" + std::string(text) + "' for key '" + std::string(key) + "'");
    }
    return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
    if (text == "1" || text == "true" || text == "yes" || text == "on") return true;
    if (text == "0" || text == "false" || text == "no" || text == "off") return false;
    throw ConfigError("invalid boolean '" + std::string(text) + "' for key '" + std::string(key) + "'");
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace

ControllerMode parse_controller_mode(std::string_view name) {
    if (name == "full-state") return ControllerMode::FullState;
    if (name == "sensorless") return ControllerMode::Sensorless;
    throw ConfigError("unknown controller mode '" + std::string(name) + "'");
}

std::string_view to_string(ControllerMode mode) {
    return mode == ControllerMode::FullState ? "full-state" : "sensorless";
}

Scenario Scenario::preset(ReferenceKind kind) {
    Scenario sc;
    sc.reference = kind;
    switch (kind) {
        case ReferenceKind::Sinusoids:
            sc.nu = 10.0;
            sc.gamma = 1.0;
            sc.duration = 20.0;
            break;
        case ReferenceKind::Steps:
            sc.nu = 1.0;
            sc.gamma = 1000.0;
            sc.duration = 8.0;
            break;
        case ReferenceKind::Constant:
            sc.nu = 10.0;
            sc.duration = 5.0;
            break;
    }
    return sc;
}

void Scenario::validate() const {
    plant.validate();
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be > 0");
    if (!(duration > 0.0) || !std::isfinite(duration)) throw ConfigError("duration must be > 0");
    if (!(nu > 0.0)) throw ConfigError("nu must be > 0");
    if (!(gamma > 0.0)) throw ConfigError("gamma must be > 0");
    if (!(gamma_v > 0.0)) throw ConfigError("gamma_v must be > 0");
    if (!(gamma_Y > 0.0)) throw ConfigError("gamma_Y must be > 0");
    if (!(eps_lambda > 0.0)) throw ConfigError("eps_lambda must be > 0");
    if (!(mu > 0.0)) throw ConfigError("mu must be > 0");
    if (!(rho > 0.0)) throw ConfigError("rho must be > 0");
    if (decimate < 1) throw ConfigError("decimate must be >= 1");
    for (std::size_t j = 0; j < 4; ++j) {
        if (!(drem_nu[j] > 0.0) || !(drem_kappa[j] > 0.0)) {
            throw ConfigError("DREM filter poles and gains must be > 0");
        }
    }
}

void Scenario::set(std::string_view key, std::string_view value) {
    value = trim(value);
    if (key == "reference") {
        reference = parse_reference_kind(value);
    } else if (key == "mode") {
        mode = parse_controller_mode(value);
    } else if (key == "decimate") {
        const double d = parse_double(key, value);
        if (d < 1.0 || d != static_cast<double>(static_cast<int>(d))) {
            throw ConfigError("decimate must be a positive integer");
        }
        decimate = static_cast<int>(d);
    } else if (key == "log_delta_u") {
        log_delta_u = parse_bool(key, value);
    } else if (const ScalarKey* k = find_scalar(key)) {
        k->get(*this) = parse_double(key, value);
    } else {
        throw ConfigError("unknown key '" + std::string(key) + "'");
    }
}

double Scenario::get(std::string_view key) const {
    const ScalarKey* k = find_scalar(key);
    if (k == nullptr) throw ConfigError("'" + std::string(key) + "' is not a scalar scenario field");
    return k->get(const_cast<Scenario&>(*this));
}

void Scenario::set_scalar(std::string_view key, double value) {
    const ScalarKey* k = find_scalar(key);
    if (k == nullptr) throw ConfigError("'" + std::string(key) + "' is not a scalar scenario field");
    k->get(*this) = value;
}

std::vector<std::string> Scenario::scalar_keys() {
    std::vector<std::string> out;
    for (const auto& k : kScalarKeys) out.emplace_back(k.name);
    return out;
}

ConfigEntries parse_config(std::string_view text) {
    ConfigEntries out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
        }
        out.emplace_back(std::string(key), std::string(value));
    }
    return out;
}

ConfigEntries read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path, "cannot open config file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

Scenario scenario_from_entries(const ConfigEntries& entries, std::optional<ReferenceKind> kind) {
    if (!kind) {
        kind = ReferenceKind::Sinusoids;
        for (const auto& [key, value] : entries) {
            if (key == "reference") kind = parse_reference_kind(value);
        }
    }
    Scenario sc = Scenario::preset(*kind);
    for (const auto& [key, value] : entries) sc.set(key, value);
    sc.reference = *kind;
    return sc;
}

std::string to_config_text(const Scenario& sc) {
    std::ostringstream os;
    os << "reference = " << to_string(sc.reference) << '\n';
    os << "mode = " << to_string(sc.mode) << '\n';
    os << "decimate = " << sc.decimate << '\n';
    os << "log_delta_u = " << (sc.log_delta_u ? "true" : "false") << '\n';
    for (const auto& k : kScalarKeys) os << k.name << " = " << format_double(sc.get(k.name)) << '\n';
    return os.str();
}

}  // namespace maglev
