#pragma once

#include <stdexcept>
#include <string>

namespace grushin {

// Bad user input: config files, invalid parameters, malformed field dumps.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Grid construction failures (too coarse, empty interior).
struct GridError : std::runtime_error {
    explicit GridError(const std::string& msg) : std::runtime_error(msg) {}
};

// Iterative solver did not reach its tolerance; carries the final residual
// in the message.
struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& msg, double residual = 0.0)
        : std::runtime_error(msg), final_residual(residual) {}
    double final_residual;
};

} // namespace grushin
