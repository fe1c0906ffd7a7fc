#pragma once

#include <complex>
#include <vector>

#include "psnads/dressed.hpp"
#include "psnads/field_pulse.hpp"

namespace psnads {

/// Two-level quasi-energies sampled on a time grid.
struct QuasiEnergySeries {
    std::vector<double> t_grid;
    std::vector<std::complex<double>> ground;   // omega'_G(t)
    std::vector<std::complex<double>> excited;  // omega'_E(t)
};

/// Accumulated material phases of all dressed-state components. Integrals run
/// from t_grid.front(); the field phase Phi_F is always evaluated at absolute t.
struct PhaseLedger {
    std::vector<double> t_grid;
    std::vector<double> phi_ground_real;                // Phi_{G,r}
    std::vector<std::vector<double>> phi_ground_virtual;  // Phi_{G,v,i} per virtual
    // two-level mode only (empty otherwise)
    std::vector<double> phi_excited_real;  // Phi_{E,r}
    std::vector<double> phi_excited_virtual;  // Phi_{E,v}
    std::vector<double> phi_nad;              // Phi_NAD
    std::vector<double> detuning_nad;         // d omega'_NAD

    double initial_phase = 0.0;    // phi_g echo
    std::vector<double> offsets;   // phi_{G,v,i} echo
    FieldPulse pulse;              // reference for Phi_F

    bool two_level() const { return !phi_nad.empty(); }
    std::size_t virtual_count() const { return phi_ground_virtual.size(); }
};

/// Running trapezoidal integral of f on t_grid, zero at the first sample.
std::vector<double> cumulative_trapezoid(const std::vector<double>& t_grid,
                                         const std::vector<double>& f);

/// Nonadiabatic detuning omega'_E - omega'_G - omega and its running integral.
std::pair<std::vector<double>, std::vector<double>> nonadiabatic_phase(
    const QuasiEnergySeries& quasi, double carrier);

/// Two-level ledger: Phi_{G,r}, Phi_{G,v} (virtual index 0), Phi_{E,r},
/// Phi_{E,v}, Phi_NAD. Only the real parts of the quasi-energies accumulate.
PhaseLedger ledger_two_level(const QuasiEnergySeries& quasi, const FieldPulse& pulse,
                             double phi_g);

/// Multi-level ground ledger from a decomposition series sampled on t_grid.
PhaseLedger ledger_multilevel(const std::vector<DressedDecomposition>& decomposition,
                              const std::vector<double>& t_grid,
                              const FieldPulse& pulse, double phi_g,
                              const std::vector<double>& offsets);

/// Sample the two-level quasi-energies of a ladder pair over a grid.
QuasiEnergySeries sample_quasi_energies(const LevelSystem& system,
                                        const FieldPulse& pulse,
                                        const std::vector<double>& t_grid);

}  // namespace psnads
