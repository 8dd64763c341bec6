#pragma once

#include <stdexcept>
#include <string>

namespace cyclekit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad input: malformed data, out-of-range parameters, impossible requests.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A computation that could not produce a finite, trustworthy number.
class NumericalError : public Error {
public:
    using Error::Error;
};

class ParseError : public ValidationError {
public:
    ParseError(const std::string &what, int line)
        : ValidationError("line " + std::to_string(line) + ": " + what),
          line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

class GapError : public ValidationError {
public:
    explicit GapError(int missing_year)
        : ValidationError("gap in series: year " + std::to_string(missing_year) +
                          " is missing"),
          missing_year_(missing_year) {}
    int missing_year() const noexcept { return missing_year_; }

private:
    int missing_year_;
};

/// Energy lies below the bottom of the requested well.
class NoOscillationError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Two wells can host an orbit at this energy and no selector was given.
class AmbiguousWellError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Orbit period diverges: energy sits on (or numerically at) a separatrix.
class SeparatrixError : public NumericalError {
public:
    SeparatrixError(const std::string &what, double energy)
        : NumericalError(what), energy_(energy) {}
    double energy() const noexcept { return energy_; }

private:
    double energy_;
};

class InsufficientOscillationsError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Discrete orbit left the configured bound.
class DivergenceError : public NumericalError {
public:
    DivergenceError(const std::string &what, long step)
        : NumericalError(what), step_(step) {}
    long step() const noexcept { return step_; }

private:
    long step_;
};

} // namespace cyclekit
