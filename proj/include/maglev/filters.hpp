#pragma once

#include <string>

#include "maglev/numerics.hpp"

namespace maglev {

enum class FilterKind {
    LowPass,     ///< gain / (p + pole); gain == pole gives unit DC gain
    PureLag,     ///< 1 / (p + pole)
    Derivative,  ///< gain * p / (p + pole), realized as gain * (input - pole * state)
};

/// First-order LTI filter with a single internal state `s`, ds/dt = -pole*s + input.
///
/// Every filter in the observer stack is this primitive: the swapping-lemma
/// network, the DREM extension filters and the final derivative filter.
class FilterNode {
public:
    FilterNode(FilterKind kind, double pole, double gain, std::string name = "filter");

    static FilterNode low_pass(double pole, std::string name = "low_pass") {
        return FilterNode(FilterKind::LowPass, pole, pole, std::move(name));
    }
    static FilterNode pure_lag(double pole, std::string name = "lag") {
        return FilterNode(FilterKind::PureLag, pole, 1.0, std::move(name));
    }
    static FilterNode derivative(double pole, std::string name = "derivative") {
        return FilterNode(FilterKind::Derivative, pole, pole, std::move(name));
    }

    /// Advances the state by `dt` with the input held, returns the output at the end of the step.
    double step(double input, double dt);

    double output(double input) const;
    double state_rate(double input) const { return -pole_ * state_ + input; }

    FilterKind kind() const noexcept { return kind_; }
    double pole() const noexcept { return pole_; }
    double gain() const noexcept { return gain_; }
    double state() const noexcept { return state_; }
    void set_state(double s) { state_ = s; }
    const std::string& name() const noexcept { return name_; }

private:
    FilterKind kind_;
    double pole_;
    double gain_;
    double state_ = 0.0;
    std::string name_;
};

/// Output of a lag-type state with gain: gain * s.
inline double lag_output(double s, double gain) { return gain * s; }

/// Output of the derivative realization gain*(input - pole*s).
inline double derivative_output(double s, double input, double pole, double gain) {
    return gain * (input - pole * s);
}

}  // namespace maglev
