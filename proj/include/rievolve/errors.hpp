// Error types shared across the solver modules.
#ifndef RIEVOLVE_ERRORS_HPP
#define RIEVOLVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rievolve {

/// No branch of the pointwise inclusion admits a solution.
struct NoSolution : std::runtime_error {
    explicit NoSolution(const std::string& what) : std::runtime_error(what) {}
};

/// Argument outside the energy's working bracket.
struct OutOfBracket : std::runtime_error {
    explicit OutOfBracket(const std::string& what) : std::runtime_error(what) {}
};

/// Level has no preimage in the bracket.
struct NoPreimage : std::runtime_error {
    explicit NoPreimage(const std::string& what) : std::runtime_error(what) {}
};

/// A step-size or CFL guard failed; the caller must shrink the step.
struct GuardViolated : std::runtime_error {
    explicit GuardViolated(const std::string& what) : std::runtime_error(what) {}
};

/// Incremental-minimization bracket does not confine the minimizers.
struct BracketTooSmall : std::runtime_error {
    explicit BracketTooSmall(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent run configuration.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace rievolve

#endif
