#pragma once

#include <stdexcept>
#include <string>

namespace swe {

/// Process exit codes used by the CLI. Fixed values, safe to script against.
enum class ExitCode : int {
    ok = 0,
    config = 2,
    instability = 3,
    step_collapse = 4,
    io = 5,
};

/// Invalid configuration: bad grid dimensions, malformed config text,
/// illegal executor parameters, and similar caller mistakes.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// The solver detected a state it cannot handle: a cell at or below the
/// dry threshold, or a non-finite value. Carries the first offending cell
/// (row-major order) and the simulation time at detection.
class InstabilityError : public std::runtime_error {
public:
    InstabilityError(const std::string& msg, int i, int j, double t)
        : std::runtime_error(msg), i_(i), j_(j), t_(t) {}

    int cell_i() const { return i_; }
    int cell_j() const { return j_; }
    double sim_time() const { return t_; }

private:
    int i_;
    int j_;
    double t_;
};

/// The CFL time step fell below the configured floor, signalling runaway
/// wave speeds rather than normal end-of-run clamping.
class StepCollapseError : public std::runtime_error {
public:
    StepCollapseError(const std::string& msg, double dt, double t)
        : std::runtime_error(msg), dt_(dt), t_(t) {}

    double dt() const { return dt_; }
    double sim_time() const { return t_; }

private:
    double dt_;
    double t_;
};

/// File I/O failure or malformed snapshot/config bytes.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Maps an in-flight exception type to its CLI exit code.
inline ExitCode exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return ExitCode::config;
    if (dynamic_cast<const InstabilityError*>(&e)) return ExitCode::instability;
    if (dynamic_cast<const StepCollapseError*>(&e)) return ExitCode::step_collapse;
    if (dynamic_cast<const IoError*>(&e)) return ExitCode::io;
    return ExitCode::config;
}

}  // namespace swe
