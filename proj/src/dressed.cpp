#include "psnads/dressed.hpp"

#include <cmath>

#include "psnads/errors.hpp"

namespace psnads {

using std::complex;

double mixing_angle(double delta, double rabi) {
    if (rabi < 0.0) throw config_error("Rabi frequency must be >= 0");
    if (delta == 0.0 && rabi == 0.0)
        throw config_error("mixing angle degenerate at Delta = Omega_R = 0");
    return std::atan2(rabi, delta);
}

std::pair<complex<double>, complex<double>> quasi_energies(double omega_g,
                                                           double omega_e,
                                                           double carrier, double rabi,
                                                           double gamma_g,
                                                           double gamma_e) {
    if (rabi < 0.0) throw config_error("Rabi frequency must be >= 0");
    const double delta = omega_e - omega_g - carrier;
    const complex<double> a(0.0, -0.5 * gamma_g);
    const complex<double> d(delta, -0.5 * gamma_e);
    const complex<double> mean = 0.5 * (a + d);
    const complex<double> split = std::sqrt(0.25 * (d - a) * (d - a) +
                                            complex<double>(0.25 * rabi * rabi, 0.0));
    complex<double> lam_lo = mean - split;
    complex<double> lam_hi = mean + split;
    if (lam_lo.real() > lam_hi.real()) std::swap(lam_lo, lam_hi);

    // Continuity from Omega = 0: ground branch tends to -i gamma_g/2.
    // For Delta >= 0 that is the lower real part, for Delta < 0 the higher.
    complex<double> ground = (delta >= 0.0) ? lam_lo : lam_hi;
    complex<double> excited = (delta >= 0.0) ? lam_hi : lam_lo;
    // the excited branch is reported in lab terms: bare limit gives omega_e
    return {ground + omega_g, excited + omega_g + carrier};
}

DressedDecomposition build_psnads(const LevelSystem& system, const FieldPulse& pulse,
                                  double t, const std::vector<double>& offsets) {
    if (!system.is_ladder())
        throw config_error("build_psnads requires a ladder topology");
    const auto excited = system.coupled_excited();
    if (excited.empty())
        throw config_error("no excited levels coupled to the ground state");
    if (!offsets.empty() && offsets.size() != excited.size())
        throw config_error("offsets length must equal the number of virtual components");

    const double env = field_amplitude(pulse, t);
    const Level& g = system.level(0);

    DressedDecomposition out;
    out.t = t;
    out.carrier = pulse.carrier;

    double weight_sq_sum = 0.0;
    double shift_sum = 0.0;
    std::vector<double> weights;
    weights.reserve(excited.size());
    complex<double> quasi_g_2lv, quasi_e_2lv;

    for (std::size_t k = 0; k < excited.size(); ++k) {
        const Level& e = system.level(excited[k]);
        const double rabi = system.dipole(0, excited[k]) * env;
        const double delta = e.bohr_frequency - g.bohr_frequency - pulse.carrier;
        const double theta = mixing_angle(delta, rabi);
        if (theta == M_PI)
            throw config_error(
                "mixing angle hit the theta = pi branch point (zero field with "
                "negative detuning); flip the sign convention by absorbing it into "
                "C_vi or avoid Omega_R = 0 at Delta < 0");
        const double w = std::tan(0.5 * theta);
        weights.push_back(w);
        weight_sq_sum += w * w;

        auto [qg, qe] = quasi_energies(g.bohr_frequency, e.bohr_frequency,
                                       pulse.carrier, rabi, g.damping, e.damping);
        shift_sum += qg.real() - g.bohr_frequency;
        if (excited.size() == 1) {
            quasi_g_2lv = qg;
            quasi_e_2lv = qe;
        }

        VirtualComponent v;
        v.excited_index = excited[k];
        v.mixing_angle = theta;
        v.detuning = delta;
        v.offset = offsets.empty() ? 0.0 : offsets[k];
        out.virtuals.push_back(v);
    }

    out.real_strength = 1.0 / std::sqrt(1.0 + weight_sq_sum);
    for (std::size_t k = 0; k < weights.size(); ++k)
        out.virtuals[k].strength = weights[k] * out.real_strength;

    if (excited.size() == 1) {
        out.quasi_g = quasi_g_2lv;
        out.quasi_e = quasi_e_2lv;
    } else {
        out.quasi_g = complex<double>(g.bohr_frequency + shift_sum, -0.5 * g.damping);
    }
    return out;
}

DressedProjection decompose_trajectory(const Trajectory& trajectory,
                                       const LevelSystem& system,
                                       const FieldPulse& pulse) {
    if (system.size() != 2)
        throw config_error("decompose_trajectory supports exactly 2 levels");
    if (trajectory.frame != Frame::rwa)
        throw config_error("decompose_trajectory requires an rwa-frame trajectory");

    DressedProjection out;
    out.t_grid = trajectory.t_grid;
    out.a_ground.resize(trajectory.t_grid.size());
    out.a_excited.resize(trajectory.t_grid.size());

    const double delta = system.level(1).bohr_frequency -
                         system.level(0).bohr_frequency - pulse.carrier;
    const double mu = system.dipole(0, 1);

    for (std::size_t k = 0; k < trajectory.t_grid.size(); ++k) {
        const double t = trajectory.t_grid[k];
        const double rabi = std::abs(mu) * field_amplitude(pulse, t);
        // dressed = bare at the field-free degenerate point
        const double theta =
            (rabi == 0.0 && delta == 0.0) ? 0.0 : mixing_angle(delta, rabi);
        const double c = std::cos(0.5 * theta);
        const double s = std::sin(0.5 * theta);
        const complex<double> rot =
            std::exp(complex<double>(0.0, field_phase_mod(pulse, t)));
        const complex<double> pg = trajectory.samples[k][0];
        const complex<double> pe = rot * trajectory.samples[k][1];
        out.a_ground[k] = c * pg + s * pe;
        out.a_excited[k] = -s * pg + c * pe;
    }
    return out;
}

}  // namespace psnads
