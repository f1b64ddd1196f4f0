#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace contactkit {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Field or form evaluation produced a non-finite jet.
struct EvalError : Error {
    using Error::Error;
};

// Invalid user-facing configuration (bad tolerance, unknown suite, ...).
struct ConfigError : Error {
    using Error::Error;
};

// A construction-time invariant failed (transversality, family validity, ...).
// Carries the witness point coordinates when one exists.
struct ConstructionError : Error {
    std::vector<double> witness;
    ConstructionError(const std::string& msg, std::vector<double> w = {})
        : Error(msg), witness(std::move(w)) {}
};

struct CriticalPointError : Error {
    using Error::Error;
};

struct SingularDenominatorError : Error {
    std::vector<double> point;
    SingularDenominatorError(const std::string& msg, std::vector<double> p = {})
        : Error(msg), point(std::move(p)) {}
};

// Adaptive step size underflowed; carries the recorded trajectory rows
// (t, coordinates..., |constraint|) for post-mortem dumps.
struct StiffnessError : Error {
    std::vector<std::vector<double>> trajectory;
    StiffnessError(const std::string& msg, std::vector<std::vector<double>> rows = {})
        : Error(msg), trajectory(std::move(rows)) {}
};

// A flow left the hypersurface by more than 10x the surface tolerance.
struct FlowEscapeError : Error {
    using Error::Error;
};

// Determinant phase jumps too large even at the sample-count cap.
struct UndersampledError : Error {
    using Error::Error;
};

// Accumulated phase is not close to an integer multiple of 2*pi.
struct InconsistentWindingError : Error {
    using Error::Error;
};

}  // namespace contactkit
