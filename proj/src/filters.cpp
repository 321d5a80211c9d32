#include "maglev/filters.hpp"

namespace maglev {

FilterNode::FilterNode(FilterKind kind, double pole, double gain, std::string name)
    : kind_(kind), pole_(pole), gain_(gain), name_(std::move(name)) {
    if (!(pole > 0.0) || !std::isfinite(pole)) {
        throw ConfigError(name_ + ": filter pole must be > 0");
    }
    if (!std::isfinite(gain)) throw ConfigError(name_ + ": filter gain must be finite");
    if (kind == FilterKind::PureLag) gain_ = 1.0;
}

double FilterNode::output(double input) const {
    if (kind_ == FilterKind::Derivative) return derivative_output(state_, input, pole_, gain_);
    return lag_output(state_, gain_);
}

double FilterNode::step(double input, double dt) {
    require_positive_step(dt);
    require_finite(input, name_.c_str());
    StateVec<1> x{state_};
    rk4_step(x, 0.0, dt, [&](double, const StateVec<1>& s, StateVec<1>& ds) {
        ds[0] = -pole_ * s[0] + input;
    });
    state_ = x[0];
    const double out = output(input);
    require_finite(out, name_.c_str());
    return out;
}

}  // namespace maglev
