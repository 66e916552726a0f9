#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ordsec {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters or a configuration that cannot be satisfied.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed input data. `row()` is 1-based and counts the header row.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t row)
        : Error(what + " (row " + std::to_string(row) + ")"), row_(row) {}
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

/// The integrator produced a non-finite state.
class DivergenceError : public Error {
public:
    explicit DivergenceError(std::size_t step)
        : Error("integration diverged: non-finite state at step " + std::to_string(step)),
          step_(step) {}
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

/// Input shorter than an operation requires.
class LengthError : public Error {
public:
    LengthError(const std::string& what, std::size_t required, std::size_t actual)
        : Error(what + ": need at least " + std::to_string(required) + ", got " +
                std::to_string(actual)),
          required_(required), actual_(actual) {}
    std::size_t required() const noexcept { return required_; }
    std::size_t actual() const noexcept { return actual_; }

private:
    std::size_t required_;
    std::size_t actual_;
};

/// A requested pattern or report does not exist.
class NotFoundError : public Error {
public:
    using Error::Error;
};

}  // namespace ordsec
