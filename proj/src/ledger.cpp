#include "psnads/ledger.hpp"

#include "psnads/errors.hpp"

namespace psnads {

std::vector<double> cumulative_trapezoid(const std::vector<double>& t_grid,
                                         const std::vector<double>& f) {
    if (f.size() != t_grid.size())
        throw analysis_error("integrand and time grid lengths differ");
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t k = 1; k < f.size(); ++k)
        out[k] = out[k - 1] + 0.5 * (f[k] + f[k - 1]) * (t_grid[k] - t_grid[k - 1]);
    return out;
}

std::pair<std::vector<double>, std::vector<double>> nonadiabatic_phase(
    const QuasiEnergySeries& quasi, double carrier) {
    if (quasi.ground.size() != quasi.t_grid.size() ||
        quasi.excited.size() != quasi.t_grid.size())
        throw analysis_error("quasi-energy series lengths differ from the time grid");
    std::vector<double> detuning(quasi.t_grid.size());
    for (std::size_t k = 0; k < detuning.size(); ++k)
        detuning[k] = quasi.excited[k].real() - quasi.ground[k].real() - carrier;
    auto phase = cumulative_trapezoid(quasi.t_grid, detuning);
    return {std::move(detuning), std::move(phase)};
}

PhaseLedger ledger_two_level(const QuasiEnergySeries& quasi, const FieldPulse& pulse,
                             double phi_g) {
    const std::size_t n = quasi.t_grid.size();
    if (quasi.ground.size() != n || quasi.excited.size() != n)
        throw analysis_error("quasi-energy series lengths differ from the time grid");

    PhaseLedger ledger;
    ledger.t_grid = quasi.t_grid;
    ledger.initial_phase = phi_g;
    ledger.offsets = {0.0};
    ledger.pulse = pulse;

    std::vector<double> wg(n);
    for (std::size_t k = 0; k < n; ++k) wg[k] = quasi.ground[k].real();
    auto integral_g = cumulative_trapezoid(quasi.t_grid, wg);

    auto [detuning, phi_nad] = nonadiabatic_phase(quasi, pulse.carrier);
    ledger.detuning_nad = std::move(detuning);
    ledger.phi_nad = std::move(phi_nad);

    ledger.phi_ground_real.resize(n);
    std::vector<double> phi_gv(n);
    ledger.phi_excited_real.resize(n);
    ledger.phi_excited_virtual.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double phi_field = field_phase_total(pulse, quasi.t_grid[k]);
        ledger.phi_ground_real[k] = phi_g + integral_g[k];
        phi_gv[k] = ledger.phi_ground_real[k] + phi_field;
        ledger.phi_excited_real[k] = phi_gv[k] + ledger.phi_nad[k];
        ledger.phi_excited_virtual[k] = ledger.phi_excited_real[k] - phi_field;
    }
    ledger.phi_ground_virtual.push_back(std::move(phi_gv));
    return ledger;
}

PhaseLedger ledger_multilevel(const std::vector<DressedDecomposition>& decomposition,
                              const std::vector<double>& t_grid,
                              const FieldPulse& pulse, double phi_g,
                              const std::vector<double>& offsets) {
    const std::size_t n = t_grid.size();
    if (decomposition.size() != n)
        throw analysis_error("decomposition series length differs from the time grid");
    const std::size_t nv = decomposition.front().virtuals.size();
    if (offsets.size() != nv)
        throw analysis_error("offsets length (" + std::to_string(offsets.size()) +
                             ") must equal the virtual count (" + std::to_string(nv) +
                             ")");

    PhaseLedger ledger;
    ledger.t_grid = t_grid;
    ledger.initial_phase = phi_g;
    ledger.offsets = offsets;
    ledger.pulse = pulse;

    std::vector<double> wg(n);
    for (std::size_t k = 0; k < n; ++k) wg[k] = decomposition[k].quasi_g.real();
    auto integral_g = cumulative_trapezoid(t_grid, wg);

    ledger.phi_ground_real.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        ledger.phi_ground_real[k] = phi_g + integral_g[k];

    ledger.phi_ground_virtual.assign(nv, std::vector<double>(n));
    for (std::size_t i = 0; i < nv; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            ledger.phi_ground_virtual[i][k] = offsets[i] + ledger.phi_ground_real[k] +
                                              field_phase_total(pulse, t_grid[k]);
        }
    }
    return ledger;
}

QuasiEnergySeries sample_quasi_energies(const LevelSystem& system,
                                        const FieldPulse& pulse,
                                        const std::vector<double>& t_grid) {
    if (system.size() != 2)
        throw config_error("quasi-energy series sampling supports exactly 2 levels");
    QuasiEnergySeries out;
    out.t_grid = t_grid;
    out.ground.resize(t_grid.size());
    out.excited.resize(t_grid.size());
    const Level& g = system.level(0);
    const Level& e = system.level(1);
    const double mu = system.dipole(0, 1);
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        const double rabi = std::abs(mu) * field_amplitude(pulse, t_grid[k]);
        auto [qg, qe] = quasi_energies(g.bohr_frequency, e.bohr_frequency,
                                       pulse.carrier, rabi, g.damping, e.damping);
        out.ground[k] = qg;
        out.excited[k] = qe;
    }
    return out;
}

}  // namespace psnads
