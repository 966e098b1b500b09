#ifndef SENSORCTL_ERRORS_HPP
#define SENSORCTL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sensorctl {

struct ArgumentError : std::invalid_argument {
    explicit ArgumentError(const std::string& m) : std::invalid_argument(m) {}
};

struct ModelError : std::runtime_error {
    explicit ModelError(const std::string& m) : std::runtime_error(m) {}
};

struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& m) : std::runtime_error(m) {}
};

struct CapacityError : std::runtime_error {
    explicit CapacityError(const std::string& m) : std::runtime_error(m) {}
};

struct RangeError : std::runtime_error {
    explicit RangeError(const std::string& m) : std::runtime_error(m) {}
};

struct PlanningError : std::runtime_error {
    explicit PlanningError(const std::string& m) : std::runtime_error(m) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace sensorctl

#endif
