#include "psnads/coherence.hpp"

#include <cmath>
#include <complex>
#include <random>

#include "psnads/errors.hpp"

namespace psnads {

namespace {

std::vector<double> difference_series(const std::vector<double>& a,
                                      const std::vector<double>& b) {
    std::vector<double> out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] - b[k];
    return out;
}

std::vector<double> rate_series(const std::vector<double>& t,
                                const std::vector<double>& f) {
    const std::size_t n = f.size();
    std::vector<double> out(n, 0.0);
    if (n < 2) return out;
    out[0] = (f[1] - f[0]) / (t[1] - t[0]);
    out[n - 1] = (f[n - 1] - f[n - 2]) / (t[n - 1] - t[n - 2]);
    for (std::size_t k = 1; k + 1 < n; ++k)
        out[k] = (f[k + 1] - f[k - 1]) / (t[k + 1] - t[k - 1]);
    return out;
}

void finish_report(CorrelationReport& report, const PhaseLedger& ledger,
                   double epsilon_slow) {
    report.residual_rate = rate_series(report.t_grid, report.residual);
    double sum = 0.0;
    double drift = 0.0;
    for (std::size_t k = 0; k < report.residual.size(); ++k) {
        sum += std::abs(report.residual_rate[k]);
        drift = std::max(drift, std::abs(report.residual[k] - report.residual[0]));
    }
    report.mean_rate = sum / static_cast<double>(report.residual.size());
    report.drift = drift;
    report.classification = classify(report, ledger.pulse.carrier, epsilon_slow);
}

}  // namespace

CorrelationReport fast_correlation(const PhaseLedger& ledger, int i,
                                   double epsilon_slow) {
    if (i < 0 || static_cast<std::size_t>(i) >= ledger.virtual_count())
        throw analysis_error("virtual component index " + std::to_string(i) +
                             " out of range");
    CorrelationReport report;
    report.kind = CorrelationKind::virtual_vs_real;
    report.index_i = i;
    report.t_grid = ledger.t_grid;
    report.residual = difference_series(
        ledger.phi_ground_virtual[static_cast<std::size_t>(i)],
        ledger.phi_ground_real);
    finish_report(report, ledger, epsilon_slow);
    return report;
}

CorrelationReport slow_correlation(const PhaseLedger& ledger, int i, int j,
                                   double epsilon_slow) {
    const auto nv = static_cast<int>(ledger.virtual_count());
    if (i < 0 || i >= nv || j < 0 || j >= nv)
        throw analysis_error("virtual component pair (" + std::to_string(i) + ", " +
                             std::to_string(j) + ") out of range");
    CorrelationReport report;
    report.kind = CorrelationKind::virtual_vs_virtual;
    report.index_i = i;
    report.index_j = j;
    report.t_grid = ledger.t_grid;
    report.residual =
        difference_series(ledger.phi_ground_virtual[static_cast<std::size_t>(i)],
                          ledger.phi_ground_virtual[static_cast<std::size_t>(j)]);
    finish_report(report, ledger, epsilon_slow);
    return report;
}

Coherence classify(const CorrelationReport& report, double carrier,
                   double epsilon_slow) {
    if (carrier == 0.0) throw analysis_error("classification undefined at zero carrier");
    if (!(epsilon_slow > 0.0 && epsilon_slow < 1.0))
        throw analysis_error("epsilon_slow must lie in (0, 1)");
    return report.mean_rate > epsilon_slow * std::abs(carrier) ? Coherence::hidden
                                                               : Coherence::high;
}

double interference_visibility(const DressedDecomposition& decomposition) {
    std::complex<double> phasor(0.0, 0.0);
    double weight_sum = 0.0;
    for (const auto& v : decomposition.virtuals) {
        phasor += v.strength * std::exp(std::complex<double>(0.0, -v.offset));
        weight_sum += std::abs(v.strength);
    }
    if (weight_sum == 0.0)
        throw analysis_error("visibility undefined: all virtual strengths are zero");
    return std::norm(phasor) / (weight_sum * weight_sum);
}

PhaseLedger apply_phase_kick(const PhaseLedger& ledger, double kick) {
    if (!ledger.two_level())
        throw analysis_error("phase noise enters through Phi_NAD; two-level ledger required");
    PhaseLedger out = ledger;
    for (std::size_t k = 0; k < out.t_grid.size(); ++k) {
        out.phi_nad[k] += kick;
        out.phi_excited_real[k] += kick;
        out.phi_excited_virtual[k] += kick;
    }
    return out;
}

NoiseReport inject_phase_noise(const PhaseLedger& ledger, const NoiseModel& noise,
                               std::vector<PhaseLedger>* kept, int max_kept) {
    if (noise.sigma_jump < 0.0) throw config_error("sigma_jump must be >= 0");
    if (noise.n_realizations < 1) throw config_error("n_realizations must be >= 1");
    if (!ledger.two_level())
        throw analysis_error("phase noise enters through Phi_NAD; two-level ledger required");

    std::mt19937_64 rng(noise.seed);
    std::normal_distribution<double> gauss(0.0, noise.sigma_jump > 0.0
                                                    ? noise.sigma_jump
                                                    : 1.0);

    NoiseReport report;
    report.n_realizations = noise.n_realizations;
    report.sigma_jump = noise.sigma_jump;
    report.circular_variance_expected =
        1.0 - std::exp(-0.5 * noise.sigma_jump * noise.sigma_jump);

    const std::size_t last = ledger.t_grid.size() - 1;
    std::complex<double> phasor_sum(0.0, 0.0);
    bool ground_identical = true;
    for (int r = 0; r < noise.n_realizations; ++r) {
        const double kick = noise.sigma_jump > 0.0 ? gauss(rng) : 0.0;
        PhaseLedger perturbed = apply_phase_kick(ledger, kick);
        // virtual-virtual and virtual-real ground residuals carry no Phi_NAD term
        for (std::size_t i = 0; i < perturbed.virtual_count() && ground_identical; ++i) {
            for (std::size_t k = 0; k <= last; ++k) {
                if (perturbed.phi_ground_virtual[i][k] !=
                        ledger.phi_ground_virtual[i][k] ||
                    perturbed.phi_ground_real[k] != ledger.phi_ground_real[k]) {
                    ground_identical = false;
                    break;
                }
            }
        }
        const double inter_phase =
            perturbed.phi_excited_real[last] - perturbed.phi_ground_virtual[0][last];
        phasor_sum += std::exp(std::complex<double>(0.0, inter_phase));
        if (kept && r < max_kept) kept->push_back(std::move(perturbed));
    }
    report.ground_residuals_identical = ground_identical;
    report.circular_variance =
        1.0 - std::abs(phasor_sum) / static_cast<double>(noise.n_realizations);
    return report;
}

}  // namespace psnads
