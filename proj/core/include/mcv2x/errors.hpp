#pragma once

#include <stdexcept>
#include <string>

namespace mcv2x {

/// Configuration file or schema problem; `field()` names the offending key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field.empty() ? message : field + ": " + message),
          field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Simulation could not produce a valid realization (e.g. resample budget hit).
class SimulationError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace mcv2x
