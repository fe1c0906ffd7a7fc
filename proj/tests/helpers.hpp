#pragma once

#include <Eigen/Dense>
#include <random>

#include "psnads/field_pulse.hpp"
#include "psnads/level_system.hpp"

namespace psnads::testing {

inline LevelSystem two_level(double omega_g, double omega_e, double mu = 1.0,
                             double gamma_g = 0.0, double gamma_e = 0.0,
                             double phi_g = 0.0) {
    return LevelSystem({{"g", omega_g, gamma_g, phi_g}, {"e", omega_e, gamma_e, 0.0}},
                       {{{0, 1}, mu}});
}

inline FieldPulse cw_pulse(double carrier, double amplitude, double t_on = -1e9,
                           double t_off = 1e9, double phi0 = 0.0) {
    FieldPulse p;
    p.carrier = carrier;
    p.envelope = ConstantEnvelope{amplitude, t_on, t_off};
    p.phase_mod = ConstantPhase{phi0};
    return p;
}

inline FieldPulse gaussian_pulse(double carrier, double peak, double center,
                                 double fwhm) {
    FieldPulse p;
    p.carrier = carrier;
    p.envelope = GaussianEnvelope{peak, center, fwhm};
    return p;
}

inline Eigen::VectorXcd ground_state(int n) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(n);
    psi[0] = 1.0;
    return psi;
}

}  // namespace psnads::testing
