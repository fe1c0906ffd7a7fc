#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "psnads/config.hpp"
#include "psnads/integrator.hpp"

namespace psnads {

/// How far along the pipeline a run goes (CLI subcommands map onto stages).
enum class Stage { simulate, decompose, ledger, correlate };

enum class SeriesFormat { csv, json };

struct RunResult {
    nlohmann::json manifest;
    bool all_passed = true;
    // payloads keyed by relative file name; manifest.json is emitted last
    std::map<std::string, std::string> files;
};

/// Execute a scenario fully in memory. Nothing touches the filesystem, so a
/// throwing run leaves no partial output. Throws config_error /
/// integration_error; analysis-contract failures are recorded in the manifest
/// (all_passed = false), not thrown.
RunResult run_scenario(const ScenarioConfig& config, Stage stage = Stage::correlate,
                       SeriesFormat format = SeriesFormat::csv);

/// Write all payloads plus manifest.json under output_dir.
void write_run(const RunResult& result, const std::string& output_dir);

struct SweepAxis {
    std::string parameter_path;  // dotted, e.g. "pulse.envelope.peak"
    std::vector<nlohmann::json> values;
};

/// One sub-run per value (output in <output_dir>/point_<k>/) plus an ordered
/// aggregate.csv. Runs up to `jobs` points concurrently.
RunResult sweep(const nlohmann::json& base_config, const SweepAxis& axis,
                const std::string& output_dir, int jobs = 1);

// Oracle surfaces (also used by the acceptance suite).

/// Max |ledger Phi_{G,r} - numeric phase| over the run, two-level rwa.
double oracle_two_level_phase_error(const ScenarioConfig& config);

/// Max pairwise drift of TDSE-extracted virtual-virtual residuals inside the
/// window where the envelope exceeds 10% of its grid maximum.
double oracle_virtual_drift(const ScenarioConfig& config);

/// Final |a_E|^2 / norm^2 of a two-level rwa trajectory (population left
/// outside the ground dressed state).
double nonadiabatic_transfer(const Trajectory& trajectory, const LevelSystem& system,
                             const FieldPulse& pulse);

}  // namespace psnads
