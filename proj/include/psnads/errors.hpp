#pragma once

#include <stdexcept>
#include <string>

namespace psnads {

/// Invalid system/pulse/scenario definition (CLI exit code 2).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical integration could not proceed (CLI exit code 3).
class integration_error : public std::runtime_error {
public:
    integration_error(const std::string& what, double t)
        : std::runtime_error(what + " (t = " + std::to_string(t) + ")"), t_fail(t) {}
    double t_fail;
};

/// An analysis contract (spec invariant) failed at run time (CLI exit code 1).
class analysis_error : public std::runtime_error {
public:
    explicit analysis_error(const std::string& what) : std::runtime_error(what) {}
};

/// Phase requested where the projected amplitude is below the magnitude floor.
class undefined_phase_error : public std::runtime_error {
public:
    undefined_phase_error(const std::string& what, double t)
        : std::runtime_error(what + " (first failing time t = " + std::to_string(t) + ")"),
          t_fail(t) {}
    double t_fail;
};

}  // namespace psnads
