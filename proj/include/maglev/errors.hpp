#pragma once

#include <stdexcept>
#include <string>

namespace maglev {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters, gains, keys or sizes.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A NaN or Inf appeared in a named signal.
class NonFiniteSignal : public Error {
public:
    explicit NonFiniteSignal(std::string node)
        : Error("non-finite signal in " + node), node_(std::move(node)) {}

    const std::string& node() const noexcept { return node_; }

private:
    std::string node_;
};

/// The closed-loop simulation hit a non-finite state.
class NumericAbort : public Error {
public:
    NumericAbort(double time, std::string subsystem)
        : Error("numeric abort at t=" + std::to_string(time) + " in " + subsystem),
          time_(time), subsystem_(std::move(subsystem)) {}

    double time() const noexcept { return time_; }
    const std::string& subsystem() const noexcept { return subsystem_; }

private:
    double time_;
    std::string subsystem_;
};

class IoError : public Error {
public:
    IoError(const std::string& path, const std::string& what)
        : Error(path + ": " + what), path_(path) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace maglev
