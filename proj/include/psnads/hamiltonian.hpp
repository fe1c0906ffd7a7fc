#pragma once

#include <Eigen/Dense>
#include <complex>

#include "psnads/field_pulse.hpp"
#include "psnads/level_system.hpp"

namespace psnads {

enum class Frame { lab, rwa };

struct HamiltonianMatrix {
    Eigen::MatrixXcd entries;
    Frame frame = Frame::lab;
    double t = 0.0;
};

/// Hamiltonian at time t.
///
/// lab:  diag omega_j - i gamma_j/2, off-diagonal -mu_jk E(t) cos(omega t + phi(t)).
/// rwa:  rotating frame at the carrier, referenced to the ground level.
///       Ground diagonal -i gamma_g/2; excited diagonal Delta_i - i gamma_i/2;
///       coupling (i,0) = -Omega_i(t)/2 e^{-i phi(t)} with Omega_i = mu_i E_env(t).
///       Requires ladder topology (throws config_error otherwise).
HamiltonianMatrix hamiltonian(const LevelSystem& system, const FieldPulse& pulse,
                              double t, Frame frame);

}  // namespace psnads
