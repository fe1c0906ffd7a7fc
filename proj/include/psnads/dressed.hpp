#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "psnads/field_pulse.hpp"
#include "psnads/integrator.hpp"
#include "psnads/level_system.hpp"

namespace psnads {

struct VirtualComponent {
    int excited_index = 1;       // bare level index
    double strength = 0.0;       // C_vi
    double mixing_angle = 0.0;   // theta_i, rad
    double detuning = 0.0;       // Delta_i, rad/time
    double offset = 0.0;         // phi_{G,v,i}, rad (constant, supplied)
};

/// Ground dressed state decomposed into one real and n virtual components.
/// All virtual quasi-energies equal quasi_g + carrier by construction.
struct DressedDecomposition {
    double t = 0.0;
    double real_strength = 1.0;  // C_r
    std::vector<VirtualComponent> virtuals;
    std::complex<double> quasi_g;                 // omega'_G (imag part: damping)
    std::optional<std::complex<double>> quasi_e;  // omega'_E, two-level only
    double carrier = 0.0;

    double virtual_quasi_real() const { return quasi_g.real() + carrier; }
};

/// theta = atan2(Omega_R, Delta) in [0, pi]. Throws config_error on the
/// degenerate point Delta = Omega_R = 0.
double mixing_angle(double delta, double rabi);

/// Complex quasi-energies (omega'_G, omega'_E) of the two-level RWA matrix
/// [[-i gamma_g/2, -Omega/2], [-Omega/2, Delta - i gamma_e/2]] shifted by
/// omega_g. Ground branch follows continuity from Omega = 0 (at Delta = 0 it
/// is the branch with the lower real part).
std::pair<std::complex<double>, std::complex<double>> quasi_energies(
    double omega_g, double omega_e, double carrier, double rabi, double gamma_g,
    double gamma_e);

/// Ground dressed state at time t for a ladder system. Offsets are the
/// per-virtual constant phases (empty means all zero).
DressedDecomposition build_psnads(const LevelSystem& system, const FieldPulse& pulse,
                                  double t, const std::vector<double>& offsets = {});

/// Per-sample projections onto the instantaneous two-level dressed basis.
struct DressedProjection {
    std::vector<double> t_grid;
    std::vector<std::complex<double>> a_ground;
    std::vector<std::complex<double>> a_excited;
};

/// Requires a two-level rwa-frame trajectory; |a_G|^2 + |a_E|^2 preserves the
/// trajectory norm.
DressedProjection decompose_trajectory(const Trajectory& trajectory,
                                       const LevelSystem& system,
                                       const FieldPulse& pulse);

}  // namespace psnads
