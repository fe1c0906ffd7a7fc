#include "psnads/phase_extraction.hpp"

#include <cmath>

#include "psnads/errors.hpp"

namespace psnads {

std::vector<double> unwrap_negative_arg(const std::vector<std::complex<double>>& z,
                                        const std::vector<double>& t_grid) {
    std::vector<double> phi(z.size());
    for (std::size_t k = 0; k < z.size(); ++k) {
        if (std::abs(z[k]) < kMagnitudeFloor)
            throw undefined_phase_error("projected amplitude below magnitude floor",
                                        t_grid[k]);
        if (k == 0) {
            phi[0] = -std::arg(z[0]);
            if (phi[0] <= -M_PI) phi[0] += 2.0 * M_PI;  // keep start in (-pi, pi]
        } else {
            // principal-branch increment; valid while per-sample steps stay < pi
            double d = -(std::arg(z[k]) - std::arg(z[k - 1]));
            d = std::remainder(d, 2.0 * M_PI);
            phi[k] = phi[k - 1] + d;
        }
    }
    return phi;
}

PhaseSeries extract_numeric_phase(const Trajectory& trajectory,
                                  const ProjectorFn& projector) {
    std::vector<std::complex<double>> z(trajectory.samples.size());
    for (std::size_t k = 0; k < trajectory.samples.size(); ++k)
        z[k] = projector(k).dot(trajectory.samples[k]);  // <proj|psi>
    return {trajectory.t_grid, unwrap_negative_arg(z, trajectory.t_grid)};
}

PhaseSeries extract_numeric_phase(const Trajectory& trajectory,
                                  const Eigen::VectorXcd& projector) {
    return extract_numeric_phase(trajectory,
                                 [&projector](std::size_t) { return projector; });
}

}  // namespace psnads
