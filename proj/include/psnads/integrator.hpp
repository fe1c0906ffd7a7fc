#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "psnads/hamiltonian.hpp"

namespace psnads {

struct IntegratorStats {
    long steps = 0;
    long rejected_steps = 0;
    double max_local_error = 0.0;  // largest accepted weighted error estimate
};

struct StateVector {
    Eigen::VectorXcd amplitudes;
    double t = 0.0;
};

/// Time-sampled solution of the Schroedinger equation on a fixed output grid.
struct Trajectory {
    std::vector<double> t_grid;
    std::vector<Eigen::VectorXcd> samples;  // one per grid point
    Frame frame = Frame::rwa;
    IntegratorStats stats;

    double norm_sq(std::size_t k) const { return samples[k].squaredNorm(); }
};

enum class Method { adaptive_rk45, fixed_rk4 };

struct IntegrateOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    Frame frame = Frame::rwa;
    Method method = Method::adaptive_rk45;
    int fixed_substeps = 8;  // per output interval, fixed_rk4 only
};

using OdeRhs = std::function<Eigen::VectorXcd(double, const Eigen::VectorXcd&)>;

/// Dormand-Prince 5(4) with 4th-order dense output at the requested times,
/// or fixed-step classical RK4. Throws integration_error on step underflow.
Trajectory solve_ode(const OdeRhs& rhs, const Eigen::VectorXcd& y0,
                     const std::vector<double>& t_grid, const IntegrateOptions& opts);

/// Integrate i dpsi/dt = H(t) psi for the given system/pulse.
Trajectory integrate(const LevelSystem& system, const FieldPulse& pulse,
                     const Eigen::VectorXcd& psi0, const std::vector<double>& t_grid,
                     const IntegrateOptions& opts);

/// Uniform grid over [t_start, t_end] with at least samples_per_cycle points
/// per carrier period 2 pi / omega (and at least 2 points).
std::vector<double> make_time_grid(double t_start, double t_end, double carrier,
                                   int samples_per_cycle);

}  // namespace psnads
