#include "psnads/runner.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <thread>

#include "psnads/coherence.hpp"
#include "psnads/csv.hpp"
#include "psnads/dressed.hpp"
#include "psnads/errors.hpp"
#include "psnads/ledger.hpp"
#include "psnads/phase_extraction.hpp"
#include "psnads/sha256.hpp"

namespace psnads {

using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr double kContractTol = 1e-10;
constexpr double kOracleTol = 1e-2;
constexpr double kWindowFraction = 0.1;

std::string trajectory_csv(const Trajectory& traj) {
    std::vector<std::string> header = {"t"};
    const auto n = traj.samples.front().size();
    for (Eigen::Index i = 0; i < n; ++i) {
        header.push_back("re_" + std::to_string(i));
        header.push_back("im_" + std::to_string(i));
    }
    header.push_back("norm_sq");
    std::string out = csv_row(header);
    for (std::size_t k = 0; k < traj.t_grid.size(); ++k) {
        std::vector<double> row = {traj.t_grid[k]};
        for (Eigen::Index i = 0; i < n; ++i) {
            row.push_back(traj.samples[k][i].real());
            row.push_back(traj.samples[k][i].imag());
        }
        row.push_back(traj.norm_sq(k));
        out += csv_row_numeric(row);
    }
    return out;
}

std::string decomposition_csv(const std::vector<DressedDecomposition>& series,
                              const std::vector<double>& t_grid) {
    std::vector<std::string> header = {"t", "C_r"};
    const std::size_t nv = series.front().virtuals.size();
    for (std::size_t i = 0; i < nv; ++i) {
        header.push_back("C_v" + std::to_string(i));
        header.push_back("theta_" + std::to_string(i));
    }
    header.push_back("omega_G");
    header.push_back("omega_Gv");
    std::string out = csv_row(header);
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        std::vector<double> row = {t_grid[k], series[k].real_strength};
        for (std::size_t i = 0; i < nv; ++i) {
            row.push_back(series[k].virtuals[i].strength);
            row.push_back(series[k].virtuals[i].mixing_angle);
        }
        row.push_back(series[k].quasi_g.real());
        row.push_back(series[k].virtual_quasi_real());
        out += csv_row_numeric(row);
    }
    return out;
}

std::string ledger_csv(const PhaseLedger& ledger) {
    std::vector<std::string> header = {"t", "phi_G_r"};
    for (std::size_t i = 0; i < ledger.virtual_count(); ++i)
        header.push_back("phi_G_v" + std::to_string(i));
    if (ledger.two_level()) {
        header.push_back("phi_E_r");
        header.push_back("phi_E_v");
        header.push_back("phi_NAD");
        header.push_back("detuning_NAD");
    }
    std::string out = csv_row(header);
    for (std::size_t k = 0; k < ledger.t_grid.size(); ++k) {
        std::vector<double> row = {ledger.t_grid[k], ledger.phi_ground_real[k]};
        for (std::size_t i = 0; i < ledger.virtual_count(); ++i)
            row.push_back(ledger.phi_ground_virtual[i][k]);
        if (ledger.two_level()) {
            row.push_back(ledger.phi_excited_real[k]);
            row.push_back(ledger.phi_excited_virtual[k]);
            row.push_back(ledger.phi_nad[k]);
            row.push_back(ledger.detuning_nad[k]);
        }
        out += csv_row_numeric(row);
    }
    return out;
}

std::string residual_csv(const CorrelationReport& report) {
    std::string out = csv_row({"t", "residual", "residual_rate"});
    for (std::size_t k = 0; k < report.t_grid.size(); ++k)
        out += csv_row_numeric(
            {report.t_grid[k], report.residual[k], report.residual_rate[k]});
    return out;
}

json pulse_meta(const FieldPulse& pulse) {
    json j;
    j["carrier"] = pulse.carrier;
    if (const auto* c = std::get_if<ConstantEnvelope>(&pulse.envelope))
        j["envelope"] = {{"shape", "constant"}, {"amplitude", c->amplitude},
                         {"t_on", c->t_on}, {"t_off", c->t_off}};
    else if (const auto* g = std::get_if<GaussianEnvelope>(&pulse.envelope))
        j["envelope"] = {{"shape", "gaussian"}, {"peak", g->peak},
                         {"center", g->center}, {"fwhm", g->fwhm}};
    else if (const auto* s = std::get_if<SechEnvelope>(&pulse.envelope))
        j["envelope"] = {{"shape", "sech"}, {"peak", s->peak},
                         {"center", s->center}, {"width", s->width}};
    if (const auto* p = std::get_if<ConstantPhase>(&pulse.phase_mod))
        j["phase"] = {{"shape", "constant"}, {"phi0", p->phi0}};
    else if (const auto* l = std::get_if<LinearChirp>(&pulse.phase_mod))
        j["phase"] = {{"shape", "linear_chirp"}, {"phi0", l->phi0}, {"rate", l->rate}};
    return j;
}

json report_json(const CorrelationReport& report) {
    json j;
    j["kind"] = report.kind == CorrelationKind::virtual_vs_real ? "virtual_vs_real"
                                                                : "virtual_vs_virtual";
    j["i"] = report.index_i;
    if (report.index_j >= 0) j["j"] = report.index_j;
    j["mean_rate"] = report.mean_rate;
    j["drift"] = report.drift;
    j["classification"] = to_string(report.classification);
    return j;
}

std::size_t peak_envelope_index(const FieldPulse& pulse,
                                const std::vector<double>& t_grid) {
    std::size_t best = 0;
    double best_env = -1.0;
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        const double env = field_amplitude(pulse, t_grid[k]);
        if (env > best_env) {
            best_env = env;
            best = k;
        }
    }
    return best;
}

PhaseLedger build_ledger(const ScenarioConfig& cfg, const std::vector<double>& grid,
                         const std::vector<DressedDecomposition>& decomposition) {
    const double phi_g = cfg.system.level(0).initial_phase;
    if (cfg.system.size() == 2) {
        return ledger_two_level(sample_quasi_energies(cfg.system, cfg.pulse, grid),
                                cfg.pulse, phi_g);
    }
    return ledger_multilevel(decomposition, grid, cfg.pulse, phi_g, cfg.offsets);
}

}  // namespace

double nonadiabatic_transfer(const Trajectory& trajectory, const LevelSystem& system,
                             const FieldPulse& pulse) {
    const auto proj = decompose_trajectory(trajectory, system, pulse);
    const std::size_t last = trajectory.t_grid.size() - 1;
    const double norm_sq = trajectory.norm_sq(last);
    if (norm_sq <= 0.0) throw analysis_error("trajectory norm vanished");
    return std::norm(proj.a_excited[last]) / norm_sq;
}

double oracle_two_level_phase_error(const ScenarioConfig& cfg) {
    if (cfg.system.size() != 2)
        throw config_error("two-level oracle requires exactly 2 levels");
    const auto grid = make_time_grid(cfg.t_start, cfg.t_end, cfg.pulse.carrier,
                                     cfg.samples_per_cycle);
    IntegrateOptions opts{cfg.rel_tol, cfg.abs_tol, Frame::rwa, cfg.method};
    const auto traj = integrate(cfg.system, cfg.pulse, cfg.initial_state, grid, opts);
    const auto proj = decompose_trajectory(traj, cfg.system, cfg.pulse);
    const auto numeric = unwrap_negative_arg(proj.a_ground, grid);

    const auto ledger = build_ledger(cfg, grid, {});
    const double omega_g = cfg.system.level(0).bohr_frequency;
    double max_err = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        // rwa-frame numeric phase misses the omega_g t rotation of the lab frame
        const double numeric_abs =
            numeric[k] - numeric[0] + omega_g * (grid[k] - grid[0]);
        const double ledger_abs = ledger.phi_ground_real[k] - ledger.phi_ground_real[0];
        max_err = std::max(max_err, std::abs(ledger_abs - numeric_abs));
    }
    return max_err;
}

double oracle_virtual_drift(const ScenarioConfig& cfg) {
    const auto excited = cfg.system.coupled_excited();
    if (excited.size() < 2)
        throw config_error("virtual-virtual oracle needs at least 2 virtual components");
    const auto grid = make_time_grid(cfg.t_start, cfg.t_end, cfg.pulse.carrier,
                                     cfg.samples_per_cycle);
    IntegrateOptions opts{cfg.rel_tol, cfg.abs_tol, Frame::rwa, cfg.method};
    const auto traj = integrate(cfg.system, cfg.pulse, cfg.initial_state, grid, opts);

    double env_max = 0.0;
    for (double t : grid) env_max = std::max(env_max, field_amplitude(cfg.pulse, t));
    if (env_max <= 0.0) throw analysis_error("zero field: no virtual components");
    std::size_t lo = grid.size(), hi = 0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (field_amplitude(cfg.pulse, grid[k]) >= kWindowFraction * env_max) {
            lo = std::min(lo, k);
            hi = std::max(hi, k);
        }
    }

    std::vector<std::vector<double>> phases;
    std::vector<double> window(grid.begin() + static_cast<long>(lo),
                               grid.begin() + static_cast<long>(hi) + 1);
    for (int e : excited) {
        std::vector<std::complex<double>> z;
        z.reserve(window.size());
        for (std::size_t k = lo; k <= hi; ++k)
            z.push_back(traj.samples[k][e]);
        phases.push_back(unwrap_negative_arg(z, window));
    }

    double max_drift = 0.0;
    for (std::size_t a = 0; a < phases.size(); ++a) {
        for (std::size_t b = a + 1; b < phases.size(); ++b) {
            const double ref = phases[a][0] - phases[b][0];
            for (std::size_t k = 0; k < window.size(); ++k)
                max_drift =
                    std::max(max_drift, std::abs(phases[a][k] - phases[b][k] - ref));
        }
    }
    return max_drift;
}

RunResult run_scenario(const ScenarioConfig& cfg, Stage stage, SeriesFormat format) {
    const auto wall_start = std::chrono::steady_clock::now();
    RunResult result;

    const auto grid = make_time_grid(cfg.t_start, cfg.t_end, cfg.pulse.carrier,
                                     cfg.samples_per_cycle);
    IntegrateOptions opts{cfg.rel_tol, cfg.abs_tol, cfg.frame, cfg.method};
    const auto traj = integrate(cfg.system, cfg.pulse, cfg.initial_state, grid, opts);
    result.files["trajectory.csv"] = trajectory_csv(traj);

    json summary;
    std::vector<DressedDecomposition> decomposition;
    PhaseLedger ledger;
    bool have_ledger = false;

    if (stage >= Stage::decompose && cfg.system.is_ladder()) {
        decomposition.reserve(grid.size());
        for (double t : grid)
            decomposition.push_back(build_psnads(cfg.system, cfg.pulse, t, cfg.offsets));
        result.files["decomposition.csv"] = decomposition_csv(decomposition, grid);
    }

    if (stage >= Stage::ledger && cfg.system.is_ladder()) {
        ledger = build_ledger(cfg, grid, decomposition);
        have_ledger = true;
        result.files["ledger.csv"] = ledger_csv(ledger);
        json meta;
        meta["phi_g"] = ledger.initial_phase;
        meta["offsets"] = ledger.offsets;
        meta["pulse"] = pulse_meta(cfg.pulse);
        result.files["ledger_meta.json"] = meta.dump(2) + "\n";
    }

    if (cfg.system.size() == 2 && cfg.frame == Frame::rwa && stage >= Stage::decompose)
        summary["nonadiabatic_transfer"] = nonadiabatic_transfer(traj, cfg.system, cfg.pulse);

    json analyses = json::array();
    if (stage >= Stage::correlate) {
        int idx = 0;
        for (const auto& spec : cfg.analyses) {
            json a;
            bool pass = true;
            try {
                switch (spec.type) {
                    case AnalysisSpec::Type::fast_correlation: {
                        if (!have_ledger) throw analysis_error("no ledger available");
                        auto rep = fast_correlation(ledger, spec.i);
                        a = report_json(rep);
                        a["type"] = "fast_correlation";
                        double err = 0.0;
                        const double off = ledger.offsets.at(static_cast<std::size_t>(spec.i));
                        for (std::size_t k = 0; k < rep.t_grid.size(); ++k)
                            err = std::max(err,
                                           std::abs(rep.residual[k] - off -
                                                    field_phase_total(cfg.pulse, rep.t_grid[k])));
                        a["contract_error"] = err;
                        pass = err <= kContractTol;
                        const std::string base = "fast_correlation_" + std::to_string(idx);
                        if (format == SeriesFormat::csv)
                            result.files[base + ".csv"] = residual_csv(rep);
                        else {
                            a["residual"] = rep.residual;
                            a["t"] = rep.t_grid;
                        }
                        break;
                    }
                    case AnalysisSpec::Type::slow_correlation: {
                        if (!have_ledger) throw analysis_error("no ledger available");
                        auto rep = slow_correlation(ledger, spec.i, spec.j);
                        a = report_json(rep);
                        a["type"] = "slow_correlation";
                        const double expected =
                            ledger.offsets.at(static_cast<std::size_t>(spec.i)) -
                            ledger.offsets.at(static_cast<std::size_t>(spec.j));
                        double err = 0.0;
                        for (double r : rep.residual)
                            err = std::max(err, std::abs(r - expected));
                        a["contract_error"] = err;
                        pass = err <= kContractTol;
                        const std::string base = "slow_correlation_" + std::to_string(idx);
                        if (format == SeriesFormat::csv)
                            result.files[base + ".csv"] = residual_csv(rep);
                        else {
                            a["residual"] = rep.residual;
                            a["t"] = rep.t_grid;
                        }
                        if (!summary.contains("max_vv_drift") ||
                            rep.drift > summary["max_vv_drift"].get<double>())
                            summary["max_vv_drift"] = rep.drift;
                        break;
                    }
                    case AnalysisSpec::Type::visibility: {
                        if (decomposition.empty())
                            throw analysis_error("no decomposition available");
                        const auto peak = peak_envelope_index(cfg.pulse, grid);
                        const double v = interference_visibility(decomposition[peak]);
                        a["type"] = "visibility";
                        a["t"] = grid[peak];
                        a["value"] = v;
                        pass = v >= 0.0 && v <= 1.0 + 1e-12;
                        summary["visibility"] = v;
                        break;
                    }
                    case AnalysisSpec::Type::noise: {
                        if (!have_ledger) throw analysis_error("no ledger available");
                        const auto rep = inject_phase_noise(ledger, spec.noise);
                        a["type"] = "noise";
                        a["sigma"] = rep.sigma_jump;
                        a["n_realizations"] = rep.n_realizations;
                        a["ground_residuals_identical"] = rep.ground_residuals_identical;
                        a["circular_variance"] = rep.circular_variance;
                        a["circular_variance_expected"] = rep.circular_variance_expected;
                        pass = rep.ground_residuals_identical;
                        break;
                    }
                    case AnalysisSpec::Type::oracle_check: {
                        a["type"] = "oracle_check";
                        const double err = cfg.system.size() == 2
                                               ? oracle_two_level_phase_error(cfg)
                                               : oracle_virtual_drift(cfg);
                        a["max_phase_error"] = err;
                        a["tolerance"] = kOracleTol;
                        pass = err < kOracleTol;
                        summary["max_oracle_error"] = err;
                        break;
                    }
                }
            } catch (const analysis_error& e) {
                a["error"] = e.what();
                pass = false;
            }
            a["pass"] = pass;
            result.all_passed = result.all_passed && pass;
            analyses.push_back(a);
            ++idx;
        }
    }

    json manifest;
    manifest["config"] = cfg.raw;
    manifest["versions"] = {{"psnads", kVersion}};
    manifest["integrator"] = {{"steps", traj.stats.steps},
                              {"rejected_steps", traj.stats.rejected_steps},
                              {"max_local_error", traj.stats.max_local_error}};
    json files_json;
    for (const auto& [name, payload] : result.files)
        files_json[name] = sha256_hex(payload);
    manifest["files"] = files_json;
    manifest["analyses"] = analyses;
    summary["all_passed"] = result.all_passed;
    manifest["summary"] = summary;
    manifest["wall_clock_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start)
            .count();
    result.manifest = manifest;
    result.files["manifest.json"] = manifest.dump(2) + "\n";
    return result;
}

void write_run(const RunResult& result, const std::string& output_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(output_dir);
    for (const auto& [name, payload] : result.files) {
        std::ofstream out(fs::path(output_dir) / name, std::ios::binary);
        out << payload;
        if (!out) throw std::runtime_error("failed writing " + name);
    }
}

RunResult sweep(const json& base_config, const SweepAxis& axis,
                const std::string& output_dir, int jobs) {
    if (axis.values.empty()) throw config_error("sweep values list is empty");
    std::string pointer = "/";
    for (char c : axis.parameter_path) pointer += (c == '.') ? '/' : c;
    const json::json_pointer ptr(pointer);
    try {
        (void)base_config.at(ptr);
    } catch (const json::exception&) {
        throw config_error("sweep parameter path does not resolve: " +
                           axis.parameter_path);
    }

    const std::size_t n = axis.values.size();
    std::vector<json> rows(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};

    auto worker = [&]() {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= n) return;
            try {
                json cj = base_config;
                cj[ptr] = axis.values[k];
                cj["output_dir"] = output_dir + "/point_" + std::to_string(k);
                const auto cfg = parse_config(cj);
                auto res = run_scenario(cfg);
                write_run(res, cfg.output_dir);
                rows[k] = res.manifest["summary"];
                rows[k]["value"] = axis.values[k];
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };

    const int nthreads = std::clamp(jobs, 1, static_cast<int>(n));
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    auto cell = [](const json& row, const char* key) {
        return row.contains(key) ? format_double(row[key].get<double>())
                                 : std::string("nan");
    };
    std::string agg = csv_row({"index", "value", "max_vv_drift", "visibility",
                               "max_oracle_error", "nonadiabatic_transfer",
                               "all_passed"});
    bool all_passed = true;
    for (std::size_t k = 0; k < n; ++k) {
        const json& row = rows[k];
        const bool pass = row["all_passed"].get<bool>();
        all_passed = all_passed && pass;
        agg += csv_row({std::to_string(k),
                        axis.values[k].is_number()
                            ? format_double(axis.values[k].get<double>())
                            : axis.values[k].dump(),
                        cell(row, "max_vv_drift"), cell(row, "visibility"),
                        cell(row, "max_oracle_error"),
                        cell(row, "nonadiabatic_transfer"), pass ? "1" : "0"});
    }

    RunResult result;
    result.all_passed = all_passed;
    result.files["aggregate.csv"] = agg;
    json manifest;
    manifest["parameter"] = axis.parameter_path;
    manifest["values"] = axis.values;
    manifest["rows"] = rows;
    manifest["files"] = {{"aggregate.csv", sha256_hex(agg)}};
    manifest["summary"] = {{"all_passed", all_passed}};
    result.manifest = manifest;
    result.files["manifest.json"] = manifest.dump(2) + "\n";
    return result;
}

}  // namespace psnads
