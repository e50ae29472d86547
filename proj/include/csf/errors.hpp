#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace csf {

/// A model denominator fell below the configured singularity floor.
struct SingularState : std::runtime_error {
    explicit SingularState(const std::string& what) : std::runtime_error(what) {}
};

/// The Riccati denominator changed sign on the requested interval.
struct BlowUpCrossed : std::runtime_error {
    explicit BlowUpCrossed(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidParams : std::invalid_argument {
    explicit InvalidParams(const std::string& what) : std::invalid_argument(what) {}
};

struct QuadratureFailure : std::runtime_error {
    explicit QuadratureFailure(const std::string& what) : std::runtime_error(what) {}
};

struct StepSizeUnderflow : std::runtime_error {
    explicit StepSizeUnderflow(const std::string& what) : std::runtime_error(what) {}
};

/// Fixed-point iteration ratios stayed above 1 (horizon too large).
struct NoContraction : std::runtime_error {
    explicit NoContraction(const std::string& what) : std::runtime_error(what) {}
};

/// Expression syntax error with the byte offset of the failure.
struct SyntaxError : std::runtime_error {
    std::size_t offset;
    std::string expected;
    SyntaxError(std::size_t off, const std::string& exp)
        : std::runtime_error("syntax error at offset " + std::to_string(off) +
                             ": expected " + exp),
          offset(off),
          expected(exp) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace csf
