#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "psnads/integrator.hpp"

namespace psnads {

/// Unwrapped phase samples (rad) on a time grid; components evolve as
/// e^{-i Phi}, so Phi is the positive accumulated quantity.
struct PhaseSeries {
    std::vector<double> t_grid;
    std::vector<double> values;
};

inline constexpr double kMagnitudeFloor = 1e-12;

/// Per-sample projector; index is the grid position.
using ProjectorFn = std::function<Eigen::VectorXcd(std::size_t)>;

/// Continuity-unwrapped -arg <projector(t)|psi(t)>. The first value is on the
/// principal branch (-pi, pi]. Throws undefined_phase_error when the projected
/// magnitude drops below the floor.
PhaseSeries extract_numeric_phase(const Trajectory& trajectory, const ProjectorFn& projector);

/// Convenience overload for a time-independent projector.
PhaseSeries extract_numeric_phase(const Trajectory& trajectory,
                                  const Eigen::VectorXcd& projector);

/// Unwrap a sequence of complex samples into a continuous -arg series.
std::vector<double> unwrap_negative_arg(const std::vector<std::complex<double>>& z,
                                        const std::vector<double>& t_grid);

}  // namespace psnads
