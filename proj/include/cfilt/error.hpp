#pragma once

#include <stdexcept>
#include <string>

namespace cfilt {

// Violated precondition on a design quantity (order, bandwidth, impedance...).
class SpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A network could not be evaluated at one frequency point: a coupled section
// at a multiple of pi, or a vanishing ABCD->S denominator.
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid configuration file. `field()` is the JSON path of the offending
// entry, empty for syntax errors.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field.empty() ? message : field + ": " + message),
          field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace cfilt

namespace cfilt {

// Malformed Touchstone or CSV input.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cfilt
