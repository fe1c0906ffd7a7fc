#include "psnads/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "psnads/errors.hpp"

namespace psnads {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - bhat
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense-output weights (Hairer, Norsett, Wanner)
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

double weighted_error(const Eigen::VectorXcd& err, const Eigen::VectorXcd& y0,
                      const Eigen::VectorXcd& y1, double atol, double rtol) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < err.size(); ++i) {
        const double sk =
            atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        const double r = std::abs(err[i]) / sk;
        sum += r * r;
    }
    return std::sqrt(sum / static_cast<double>(err.size()));
}

struct DenseSegment {
    double t0, h;
    Eigen::VectorXcd r1, r2, r3, r4, r5;

    Eigen::VectorXcd eval(double t) const {
        const double th = (t - t0) / h;
        const double th1 = 1.0 - th;
        return r1 + th * (r2 + th1 * (r3 + th * (r4 + th1 * r5)));
    }
};

Trajectory solve_adaptive(const OdeRhs& rhs, const Eigen::VectorXcd& y0,
                          const std::vector<double>& t_grid,
                          const IntegrateOptions& opts) {
    Trajectory traj;
    traj.t_grid = t_grid;
    traj.frame = opts.frame;
    traj.samples.resize(t_grid.size());
    traj.samples[0] = y0;

    const double t_end = t_grid.back();
    double t = t_grid.front();
    Eigen::VectorXcd y = y0;
    Eigen::VectorXcd k1 = rhs(t, y);

    // initial step guess from the rhs magnitude
    double h = (t_end - t) * 1e-4;
    const double f0 = k1.norm();
    if (f0 > 0.0) h = std::min(h, 0.01 * std::max(y.norm(), opts.abs_tol) / f0);
    h = std::max(h, 1e-12 * (t_end - t));

    std::size_t next_out = 1;
    Eigen::VectorXcd k2, k3, k4, k5, k6, k7, y1, err;

    while (t < t_end) {
        if (t + h > t_end) h = t_end - t;
        if (h < 1e-14 * std::max(1.0, std::abs(t)))
            throw integration_error("step size underflow", t);

        k2 = rhs(t + c2 * h, y + h * (a21 * k1));
        k3 = rhs(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
        k4 = rhs(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        k5 = rhs(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        k6 = rhs(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        y1 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        k7 = rhs(t + h, y1);
        err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        const double errn = weighted_error(err, y, y1, opts.abs_tol, opts.rel_tol);
        if (errn <= 1.0) {
            DenseSegment seg;
            seg.t0 = t;
            seg.h = h;
            seg.r1 = y;
            seg.r2 = y1 - y;
            seg.r3 = h * k1 - seg.r2;
            seg.r4 = seg.r2 - h * k7 - seg.r3;
            seg.r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
            while (next_out < t_grid.size() && t_grid[next_out] <= t + h + 1e-14 * h) {
                traj.samples[next_out] = seg.eval(std::min(t_grid[next_out], t + h));
                ++next_out;
            }
            t += h;
            y.swap(y1);
            k1.swap(k7);  // FSAL
            ++traj.stats.steps;
            traj.stats.max_local_error = std::max(traj.stats.max_local_error, errn);
        } else {
            ++traj.stats.rejected_steps;
        }
        const double fac = std::clamp(0.9 * std::pow(std::max(errn, 1e-10), -0.2), 0.2, 5.0);
        h *= fac;
    }
    // exact endpoint (dense eval at t_end equals y up to roundoff)
    traj.samples.back() = y;
    return traj;
}

Trajectory solve_fixed_rk4(const OdeRhs& rhs, const Eigen::VectorXcd& y0,
                           const std::vector<double>& t_grid,
                           const IntegrateOptions& opts) {
    Trajectory traj;
    traj.t_grid = t_grid;
    traj.frame = opts.frame;
    traj.samples.resize(t_grid.size());
    traj.samples[0] = y0;
    Eigen::VectorXcd y = y0;
    const int m = std::max(1, opts.fixed_substeps);
    for (std::size_t k = 1; k < t_grid.size(); ++k) {
        const double h = (t_grid[k] - t_grid[k - 1]) / m;
        double t = t_grid[k - 1];
        for (int s = 0; s < m; ++s) {
            const Eigen::VectorXcd k1 = rhs(t, y);
            const Eigen::VectorXcd k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1);
            const Eigen::VectorXcd k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2);
            const Eigen::VectorXcd k4 = rhs(t + h, y + h * k3);
            y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            t += h;
            ++traj.stats.steps;
        }
        traj.samples[k] = y;
    }
    return traj;
}

}  // namespace

Trajectory solve_ode(const OdeRhs& rhs, const Eigen::VectorXcd& y0,
                     const std::vector<double>& t_grid, const IntegrateOptions& opts) {
    if (t_grid.size() < 2) throw config_error("time grid needs at least 2 points");
    for (std::size_t k = 1; k < t_grid.size(); ++k)
        if (!(t_grid[k] > t_grid[k - 1]))
            throw config_error("time grid must be strictly increasing");
    if (!y0.allFinite()) throw config_error("initial state must be finite");
    if (!(opts.rel_tol > 0.0) || !(opts.abs_tol > 0.0))
        throw config_error("tolerances must be > 0");

    return opts.method == Method::adaptive_rk45 ? solve_adaptive(rhs, y0, t_grid, opts)
                                                : solve_fixed_rk4(rhs, y0, t_grid, opts);
}

Trajectory integrate(const LevelSystem& system, const FieldPulse& pulse,
                     const Eigen::VectorXcd& psi0, const std::vector<double>& t_grid,
                     const IntegrateOptions& opts) {
    if (psi0.size() != system.size())
        throw config_error("initial state length does not match level count");
    const std::complex<double> minus_i(0.0, -1.0);
    auto rhs = [&system, &pulse, frame = opts.frame,
                minus_i](double t, const Eigen::VectorXcd& y) -> Eigen::VectorXcd {
        return minus_i * (hamiltonian(system, pulse, t, frame).entries * y);
    };
    return solve_ode(rhs, psi0, t_grid, opts);
}

std::vector<double> make_time_grid(double t_start, double t_end, double carrier,
                                   int samples_per_cycle) {
    if (!(t_end > t_start)) throw config_error("t_end must exceed t_start");
    if (samples_per_cycle < 20)
        throw config_error("samples_per_cycle must be >= 20 (unwrap validity)");
    const double period = 2.0 * M_PI / carrier;
    const auto n = static_cast<std::size_t>(
        std::ceil((t_end - t_start) / period * samples_per_cycle));
    const std::size_t count = std::max<std::size_t>(n, 2);
    std::vector<double> grid(count + 1);
    for (std::size_t k = 0; k <= count; ++k)
        grid[k] = t_start + (t_end - t_start) * static_cast<double>(k) /
                                static_cast<double>(count);
    grid.back() = t_end;
    return grid;
}

}  // namespace psnads
