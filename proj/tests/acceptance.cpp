// Acceptance suite: one pass/fail line per criterion, non-zero exit on any
// failure. argv[1] is the path to the psnads CLI binary (used by the
// reproducibility criterion).

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "psnads/coherence.hpp"
#include "psnads/config.hpp"
#include "psnads/dressed.hpp"
#include "psnads/integrator.hpp"
#include "psnads/ledger.hpp"
#include "psnads/runner.hpp"

using namespace psnads;
using nlohmann::json;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::vector<double> uniform_grid(double t0, double t1, int n) {
    std::vector<double> g(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) g[static_cast<std::size_t>(k)] = t0 + (t1 - t0) * k / n;
    return g;
}

Eigen::VectorXcd ground_state(int n) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(n);
    psi[0] = 1.0;
    return psi;
}

LevelSystem two_level(double omega_g, double omega_e, double mu = 1.0,
                      double gamma_g = 0.0, double gamma_e = 0.0, double phi_g = 0.0) {
    return LevelSystem({{"g", omega_g, gamma_g, phi_g}, {"e", omega_e, gamma_e, 0.0}},
                       {{{0, 1}, mu}});
}

FieldPulse cw_pulse(double carrier, double amplitude) {
    FieldPulse p;
    p.carrier = carrier;
    p.envelope = ConstantEnvelope{amplitude, -1e9, 1e9};
    return p;
}

FieldPulse gaussian_pulse(double carrier, double peak, double center, double fwhm) {
    FieldPulse p;
    p.carrier = carrier;
    p.envelope = GaussianEnvelope{peak, center, fwhm};
    return p;
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2e", v);
    return buf;
}

// --- shared ladder scenario: 3 virtual components, chirped gaussian drive ---

struct LadderScenario {
    LevelSystem system = LevelSystem({{"g", 0.0, 0.0, 0.0},
                                      {"e1", 2.0, 0.0, 0.0},
                                      {"e2", 2.5, 0.0, 0.0},
                                      {"e3", 3.0, 0.0, 0.0}},
                                     {{{0, 1}, 0.5}, {{0, 2}, 0.75}, {{0, 3}, 1.0}});
    FieldPulse pulse;
    std::vector<double> offsets;
    std::vector<double> grid;
    PhaseLedger ledger;

    LadderScenario() {
        // detunings {1.0, 1.5, 2.0} at 5x the peak Rabi rates {0.2, 0.3, 0.4}
        pulse = gaussian_pulse(1.0, 0.4, 6000.0, 2000.0);
        pulse.phase_mod = LinearChirp{0.3, 2e-6};
        std::mt19937 rng(97);
        std::uniform_real_distribution<double> uni(-M_PI, M_PI);
        for (int i = 0; i < 3; ++i) offsets.push_back(uni(rng));
        grid = uniform_grid(0.0, 12000.0, 4000);
        std::vector<DressedDecomposition> d;
        d.reserve(grid.size());
        for (double t : grid) d.push_back(build_psnads(system, pulse, t, offsets));
        ledger = ledger_multilevel(d, grid, pulse, 0.0, offsets);
    }

    json config_json() const {
        return json{
            {"system",
             {{"levels", json::array({{{"label", "g"}, {"omega", 0.0}},
                                      {{"label", "e1"}, {"omega", 2.0}},
                                      {{"label", "e2"}, {"omega", 2.5}},
                                      {{"label", "e3"}, {"omega", 3.0}}})},
              {"dipoles", json::array({{{"a", 0}, {"b", 1}, {"mu", 0.5}},
                                       {{"a", 0}, {"b", 2}, {"mu", 0.75}},
                                       {{"a", 0}, {"b", 3}, {"mu", 1.0}}})}}},
            {"pulse",
             {{"carrier", 1.0},
              {"envelope",
               {{"shape", "gaussian"}, {"peak", 0.4}, {"center", 6000.0}, {"fwhm", 2000.0}}},
              {"phase", {{"shape", "linear_chirp"}, {"phi0", 0.3}, {"rate", 2e-6}}}}},
            {"initial_state", json::array({json::array({1.0, 0.0}), json::array({0.0, 0.0}),
                                           json::array({0.0, 0.0}), json::array({0.0, 0.0})})},
            {"time", {{"start", 0.0}, {"end", 12000.0}, {"samples_per_cycle", 20}}},
            {"frame", "rwa"},
            {"offsets", offsets}};
    }
};

// --- criteria ---

Outcome rabi_oracle() {
    const auto start = std::chrono::steady_clock::now();
    const double rabi = 0.05;
    auto sys = two_level(0.0, 1.0);
    auto pulse = cw_pulse(1.0, rabi);
    const double t_end = 10.0 * 2.0 * M_PI / rabi;  // 10 Rabi cycles
    auto grid = make_time_grid(0.0, t_end, 1.0, 20);
    auto traj = integrate(sys, pulse, ground_state(2), grid, {});
    double max_err = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double expected = std::pow(std::sin(0.5 * rabi * grid[k]), 2);
        max_err = std::max(max_err, std::abs(std::norm(traj.samples[k][1]) - expected));
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {max_err < 1e-6 && secs < 5.0,
            "max |P_e - sin^2| = " + sci(max_err) + ", " + sci(secs) + " s"};
}

Outcome norm_decay() {
    const double gamma = 0.2;
    auto sys = two_level(0.0, 2.3, 1.0, gamma, gamma);
    auto pulse = gaussian_pulse(2.0, 0.4, 50.0, 20.0);
    auto grid = make_time_grid(0.0, 20.0 / gamma, 2.0, 20);
    auto traj = integrate(sys, pulse, ground_state(2), grid, {});
    double max_err = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k)
        max_err = std::max(max_err,
                           std::abs(traj.norm_sq(k) - std::exp(-gamma * grid[k])));
    return {max_err < 1e-8, "max norm error = " + sci(max_err)};
}

Outcome chain_identities() {
    std::mt19937 rng(57);
    std::uniform_real_distribution<double> carrier(1.0, 5.0);
    std::uniform_real_distribution<double> detuning(0.05, 1.0);
    std::uniform_real_distribution<double> mu(0.2, 1.5);
    std::uniform_real_distribution<double> amp(0.0, 0.8);
    std::uniform_real_distribution<double> phase(-M_PI, M_PI);
    std::uniform_real_distribution<double> chirp(-0.05, 0.05);

    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const double w = carrier(rng);
        auto sys = two_level(0.0, w + detuning(rng), mu(rng), 0.0, 0.0, phase(rng));
        auto pulse = gaussian_pulse(w, amp(rng), 5.0, 3.0);
        pulse.phase_mod = LinearChirp{phase(rng), chirp(rng)};
        auto grid = uniform_grid(0.0, 10.0, 400);
        auto ledger = ledger_two_level(sample_quasi_energies(sys, pulse, grid), pulse,
                                       sys.level(0).initial_phase);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const double phi_f = field_phase_total(pulse, grid[k]);
            worst = std::max(worst, std::abs(ledger.phi_ground_virtual[0][k] -
                                             ledger.phi_ground_real[k] - phi_f));
            worst = std::max(worst, std::abs(ledger.phi_excited_real[k] -
                                             ledger.phi_ground_virtual[0][k] -
                                             ledger.phi_nad[k]));
            worst = std::max(worst, std::abs(ledger.phi_excited_virtual[k] -
                                             ledger.phi_excited_real[k] + phi_f));
        }
    }
    return {worst < 1e-10, "worst identity residual = " + sci(worst) + " rad"};
}

Outcome stationary_residuals(const LadderScenario& s) {
    double analytic = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            analytic = std::max(analytic, slow_correlation(s.ledger, i, j).drift);

    auto cfg = parse_config(s.config_json());
    const double numeric = oracle_virtual_drift(cfg);
    return {analytic <= 1e-10 && numeric < 1e-2,
            "analytic drift = " + sci(analytic) + ", numeric drift = " + sci(numeric) +
                " rad"};
}

Outcome fast_residual_and_classifier(const LadderScenario& s) {
    double worst = 0.0;
    bool classes_ok = true;
    for (int i = 0; i < 3; ++i) {
        auto rep = fast_correlation(s.ledger, i, 0.01);
        classes_ok = classes_ok && rep.classification == Coherence::hidden;
        for (std::size_t k = 0; k < rep.t_grid.size(); ++k)
            worst = std::max(worst,
                             std::abs(rep.residual[k] - s.offsets[static_cast<std::size_t>(i)] -
                                      field_phase_total(s.pulse, rep.t_grid[k])));
    }
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            classes_ok = classes_ok &&
                         slow_correlation(s.ledger, i, j, 0.01).classification ==
                             Coherence::high;
    return {worst < 1e-10 && classes_ok,
            "max residual error = " + sci(worst) + " rad, classes " +
                (classes_ok ? "correct" : "wrong")};
}

Outcome stark_shift() {
    const double rabi = 0.05;
    const double delta = 20.0 * rabi;
    auto [qg, qe] = quasi_energies(0.0, 1.0 + delta, 1.0, rabi, 0.0, 0.0);
    const double shift = qg.real();
    const double expected = -rabi * rabi / (4.0 * delta);
    const double rel = std::abs(shift - expected) / std::abs(expected);
    return {rel < 0.02, "relative shift error = " + sci(rel)};
}

Outcome two_level_reduction() {
    std::mt19937 rng(19);
    std::uniform_real_distribution<double> detuning(0.01, 2.0);
    std::uniform_real_distribution<double> rabi(0.001, 2.0);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const double delta = detuning(rng);
        const double omega_r = rabi(rng);
        auto sys = two_level(0.0, 1.0 + delta);
        auto d = build_psnads(sys, cw_pulse(1.0, omega_r), 0.0);
        const double theta = std::atan2(omega_r, delta);
        worst = std::max(worst, std::abs(d.real_strength - std::cos(0.5 * theta)));
        worst = std::max(worst,
                         std::abs(d.virtuals[0].strength - std::sin(0.5 * theta)));
    }
    return {worst < 1e-12, "max coefficient error = " + sci(worst)};
}

Outcome zero_field_reduction() {
    const double omega_g = 0.7;
    const double phi_g = 0.25;
    auto sys = two_level(omega_g, 3.0, 1.0, 0.0, 0.0, phi_g);
    auto pulse = cw_pulse(2.0, 0.0);

    double strength = 0.0;
    for (double t : {0.0, 1.3, 4.9})
        strength = std::max(strength, std::abs(build_psnads(sys, pulse, t).virtuals[0].strength));

    auto grid = uniform_grid(0.0, 5.0, 500);
    auto ledger = ledger_two_level(sample_quasi_energies(sys, pulse, grid), pulse, phi_g);
    double worst = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k)
        worst = std::max(worst, std::abs(ledger.phi_ground_real[k] - phi_g -
                                         omega_g * grid[k]));
    return {strength == 0.0 && worst < 1e-12,
            "max C_v = " + sci(strength) + ", max phase error = " + sci(worst)};
}

Outcome adiabatic_scaling() {
    auto sys = two_level(0.0, 2.0);
    double prev = 1e9;
    double last = 0.0;
    bool monotone = true;
    for (double scale : {1.0, 2.0, 4.0, 8.0}) {
        const double fwhm = 5.0 * scale;
        auto pulse = gaussian_pulse(1.0, 0.2, 4.0 * fwhm, fwhm);
        auto grid = make_time_grid(0.0, 8.0 * fwhm, 1.0, 20);
        IntegrateOptions opts;
        opts.rel_tol = 1e-12;
        opts.abs_tol = 1e-14;
        auto traj = integrate(sys, pulse, ground_state(2), grid, opts);
        last = nonadiabatic_transfer(traj, sys, pulse);
        monotone = monotone && last <= prev + 1e-12;
        prev = last;
    }
    return {monotone && last < 1e-3,
            std::string(monotone ? "non-increasing" : "NOT monotone") +
                ", longest-pulse transfer = " + sci(last)};
}

Outcome noise_separation() {
    const auto start = std::chrono::steady_clock::now();
    auto sys = two_level(0.0, 2.3);
    auto pulse = gaussian_pulse(2.0, 0.3, 5.0, 3.0);
    auto grid = uniform_grid(0.0, 10.0, 400);
    auto ledger = ledger_two_level(sample_quasi_energies(sys, pulse, grid), pulse, 0.0);

    std::vector<PhaseLedger> kept;
    auto report = inject_phase_noise(ledger, {1.0, 12345, 10000}, &kept, 30);
    bool ground_bitwise = report.ground_residuals_identical;
    for (const auto& led : kept) {
        ground_bitwise = ground_bitwise && led.phi_ground_real == ledger.phi_ground_real;
        ground_bitwise =
            ground_bitwise && led.phi_ground_virtual == ledger.phi_ground_virtual;
    }
    const double expected = 1.0 - std::exp(-0.5);
    const double rel = std::abs(report.circular_variance - expected) / expected;
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {ground_bitwise && rel < 0.05 && secs < 60.0,
            std::string(ground_bitwise ? "ground series bit-identical" : "ground series CHANGED") +
                ", circular-variance error = " + sci(rel) + ", " + sci(secs) + " s"};
}

std::map<std::string, std::string> read_dir(const std::filesystem::path& dir) {
    std::map<std::string, std::string> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        std::ifstream in(entry.path(), std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        files[entry.path().filename().string()] = buf.str();
    }
    return files;
}

Outcome reproducibility(const std::string& cli) {
    if (cli.empty()) return {false, "CLI binary path not provided"};
    namespace fs = std::filesystem;
    const fs::path root = fs::temp_directory_path() / "psnads_acceptance";
    fs::remove_all(root);
    fs::create_directories(root);

    json cfg{
        {"system",
         {{"levels", json::array({{{"label", "g"}, {"omega", 0.0}},
                                  {{"label", "e"}, {"omega", 2.3}}})},
          {"dipoles", json::array({{{"a", 0}, {"b", 1}, {"mu", 1.0}}})}}},
        {"pulse",
         {{"carrier", 2.0},
          {"envelope",
           {{"shape", "gaussian"}, {"peak", 0.3}, {"center", 5.0}, {"fwhm", 3.0}}}}},
        {"initial_state", json::array({json::array({1.0, 0.0}), json::array({0.0, 0.0})})},
        {"time", {{"start", 0.0}, {"end", 10.0}, {"samples_per_cycle", 40}}},
        {"frame", "rwa"},
        {"analyses",
         json::array({{{"type", "fast_correlation"}, {"i", 0}},
                      {{"type", "noise"}, {"sigma", 0.5}, {"seed", 7}, {"n", 50}}})}};
    const fs::path cfg_path = root / "scenario.json";
    std::ofstream(cfg_path) << cfg.dump(2);

    for (const char* out : {"run_a", "run_b"}) {
        const std::string cmd = "\"" + cli + "\" correlate --config \"" +
                                cfg_path.string() + "\" --output \"" +
                                (root / out).string() + "\"";
        const int rc = std::system(cmd.c_str());
        if (rc != 0) return {false, "CLI exited with status " + std::to_string(rc)};
    }

    const auto a = read_dir(root / "run_a");
    const auto b = read_dir(root / "run_b");
    if (a.size() != b.size() || a.empty())
        return {false, "run directories differ in file count"};
    int compared = 0;
    for (const auto& [name, payload] : a) {
        if (name == "manifest.json") continue;  // contains wall-clock timing
        auto it = b.find(name);
        if (it == b.end() || it->second != payload)
            return {false, name + " differs between runs"};
        ++compared;
    }
    fs::remove_all(root);
    return {true, std::to_string(compared) + " data files byte-identical"};
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    LadderScenario ladder;

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"resonant Rabi oscillation matches the closed form", rabi_oracle},
        {"uniform damping gives exact exponential norm decay", norm_decay},
        {"ledger chain identities hold on 100 random scenarios", chain_identities},
        {"virtual-virtual residuals are stationary (analytic + numeric oracle)",
         [&] { return stationary_residuals(ladder); }},
        {"fast residual equals offset + field phase; classifier splits hidden/high",
         [&] { return fast_residual_and_classifier(ladder); }},
        {"ground quasi-energy matches the perturbative Stark shift",
         stark_shift},
        {"single-virtual decomposition reduces to two-level trigonometry",
         two_level_reduction},
        {"zero field: vanishing virtual strengths and bare ground phase",
         zero_field_reduction},
        {"longer pulses monotonically suppress nonadiabatic transfer",
         adiabatic_scaling},
        {"phase noise spares ground residuals; circular variance matches",
         noise_separation},
        {"repeated CLI runs produce byte-identical data files",
         [&] { return reproducibility(cli); }},
    };

    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome out;
        try {
            out = criteria[k].second();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        if (!out.pass) ++failures;
        std::printf("%s %2zu  %s (%s)\n", out.pass ? "PASS" : "FAIL", k + 1,
                    criteria[k].first.c_str(), out.detail.c_str());
    }
    if (failures > 0) std::printf("%d criterion/criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
