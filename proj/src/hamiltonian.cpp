#include "psnads/hamiltonian.hpp"

#include <cmath>

#include "psnads/errors.hpp"

namespace psnads {

using std::complex;

HamiltonianMatrix hamiltonian(const LevelSystem& system, const FieldPulse& pulse,
                              double t, Frame frame) {
    const int n = system.size();
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);

    if (frame == Frame::lab) {
        const double field = field_amplitude(pulse, t) *
                             std::cos(pulse.carrier * t + field_phase_mod(pulse, t));
        for (int j = 0; j < n; ++j)
            h(j, j) = complex<double>(system.level(j).bohr_frequency,
                                      -0.5 * system.level(j).damping);
        for (const auto& [pair, mu] : system.dipoles()) {
            const complex<double> v = -mu * field;
            h(pair.first, pair.second) = v;
            h(pair.second, pair.first) = v;
        }
        return {h, Frame::lab, t};
    }

    if (!system.is_ladder())
        throw config_error("rwa frame requires a ladder topology "
                           "(couplings only between ground and excited levels)");

    const double env = field_amplitude(pulse, t);
    const double phi = field_phase_mod(pulse, t);
    const double omega_g = system.level(0).bohr_frequency;
    h(0, 0) = complex<double>(0.0, -0.5 * system.level(0).damping);
    for (int i = 1; i < n; ++i) {
        const double delta = system.level(i).bohr_frequency - omega_g - pulse.carrier;
        h(i, i) = complex<double>(delta, -0.5 * system.level(i).damping);
        const double rabi = system.dipole(0, i) * env;
        if (rabi != 0.0) {
            h(i, 0) = -0.5 * rabi * std::exp(complex<double>(0.0, -phi));
            h(0, i) = -0.5 * rabi * std::exp(complex<double>(0.0, phi));
        }
    }
    return {h, Frame::rwa, t};
}

}  // namespace psnads
