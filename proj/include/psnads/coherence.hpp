#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psnads/dressed.hpp"
#include "psnads/ledger.hpp"

namespace psnads {

enum class CorrelationKind { virtual_vs_real, virtual_vs_virtual };
enum class Coherence { high, hidden };

inline const char* to_string(Coherence c) {
    return c == Coherence::high ? "high" : "hidden";
}

inline constexpr double kEpsilonSlowDefault = 0.01;

struct CorrelationReport {
    CorrelationKind kind = CorrelationKind::virtual_vs_real;
    int index_i = 0;
    int index_j = -1;  // -1 for virtual-vs-real (the real component)
    std::vector<double> t_grid;
    std::vector<double> residual;       // rad
    std::vector<double> residual_rate;  // d residual / dt
    double mean_rate = 0.0;             // mean |residual_rate|
    double drift = 0.0;                 // max |residual - residual(t0)|
    Coherence classification = Coherence::high;
};

/// Phi_{G,v,i} - Phi_{G,r}: the "hidden" fast correlation, oscillating at the
/// carrier rate.
CorrelationReport fast_correlation(const PhaseLedger& ledger, int i,
                                   double epsilon_slow = kEpsilonSlowDefault);

/// Phi_{G,v,i} - Phi_{G,v,j}: the stationary "high" correlation.
CorrelationReport slow_correlation(const PhaseLedger& ledger, int i, int j,
                                   double epsilon_slow = kEpsilonSlowDefault);

/// hidden iff mean |d residual/dt| > epsilon_slow * omega.
Coherence classify(const CorrelationReport& report, double carrier,
                   double epsilon_slow);

/// Normalized squared phasor sum over the virtual components:
/// |sum C_vi e^{-i phi_i}|^2 / (sum |C_vi|)^2.
double interference_visibility(const DressedDecomposition& decomposition);

struct NoiseModel {
    double sigma_jump = 0.0;  // std dev of the Gaussian phase kick, rad
    std::uint64_t seed = 0;
    int n_realizations = 1;
};

struct NoiseReport {
    int n_realizations = 0;
    double sigma_jump = 0.0;
    // ground-internal residuals never see the kick
    bool ground_residuals_identical = false;
    // ensemble circular variance of Phi_{E,r} - Phi_{G,v} at the final sample
    double circular_variance = 0.0;
    double circular_variance_expected = 0.0;  // 1 - e^{-sigma^2/2}
};

/// One realization: a single Gaussian kick added to Phi_NAD and everything
/// downstream of it (Phi_{E,r}, Phi_{E,v}). Ground series are untouched.
PhaseLedger apply_phase_kick(const PhaseLedger& ledger, double kick);

/// Monte Carlo over n_realizations independent kicks. Optionally materializes
/// the first max_kept perturbed ledgers.
NoiseReport inject_phase_noise(const PhaseLedger& ledger, const NoiseModel& noise,
                               std::vector<PhaseLedger>* kept = nullptr,
                               int max_kept = 0);

}  // namespace psnads
