#pragma once

#include <stdexcept>
#include <string>

namespace uavtwin {

/// Malformed input text (scenario file, sidecar, CSV).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A well-formed input that violates a documented invariant. `field()` names
/// the offending key so the CLI can point at it.
class ValidationError : public std::runtime_error {
public:
    ValidationError(std::string field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Precondition failure on an in-process call (bad argument, out of range).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Failure while executing a pipeline (I/O, missing data overlap).
class RuntimeFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace uavtwin
