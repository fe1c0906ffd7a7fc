#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "psnads/errors.hpp"
#include "psnads/runner.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string output_dir;  // overrides config when set
    int jobs = 1;
    std::optional<std::uint64_t> seed;
    std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "scenario config file (JSON)")
        ->required();
    cmd->add_option("--output", opts.output_dir, "output directory (overrides config)");
    cmd->add_option("--jobs", opts.jobs, "max concurrent sweep points")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", opts.seed, "override noise seeds in the config");
    cmd->add_option("--format", opts.format, "residual series format")
        ->check(CLI::IsMember({"csv", "json"}));
}

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw psnads::config_error("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw psnads::config_error(std::string("config parse error: ") + e.what());
    }
    return j;
}

int run_stage(const CommonOpts& opts, psnads::Stage stage,
              bool force_oracle_only = false) {
    nlohmann::json j = load_json(opts.config_path);
    if (!opts.output_dir.empty()) j["output_dir"] = opts.output_dir;
    if (opts.seed && j.contains("analyses")) {
        for (auto& a : j["analyses"])
            if (a.value("type", "") == "noise") a["seed"] = *opts.seed;
    }
    if (force_oracle_only) j["analyses"] = {{{"type", "oracle_check"}}};

    auto cfg = psnads::parse_config(j);
    const auto format = opts.format == "json" ? psnads::SeriesFormat::json
                                              : psnads::SeriesFormat::csv;
    auto result = psnads::run_scenario(cfg, stage, format);
    psnads::write_run(result, cfg.output_dir);
    if (!result.all_passed) {
        std::cerr << "analysis contract failure (see manifest.json)\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Driven two-level/ladder quantum dynamics with dressed-state "
                 "phase ledgers and coherence analysis"};
    app.require_subcommand(1);

    CommonOpts opts;
    auto* simulate = app.add_subcommand("simulate", "integrate the TDSE and emit the trajectory");
    auto* decompose = app.add_subcommand("decompose", "trajectory plus dressed decomposition series");
    auto* ledger = app.add_subcommand("ledger", "accumulate the component phase ledger");
    auto* correlate = app.add_subcommand("correlate", "full pipeline including the configured analyses");
    auto* oracle = app.add_subcommand("oracle-check", "ledger vs numeric-phase oracle comparison");
    auto* sweep_cmd = app.add_subcommand("sweep", "run the scenario across a parameter axis");
    for (auto* cmd : {simulate, decompose, ledger, correlate, oracle, sweep_cmd})
        add_common(cmd, opts);

    std::string sweep_param;
    std::vector<double> sweep_values;
    sweep_cmd->add_option("--param", sweep_param, "dotted config path, e.g. pulse.envelope.peak")
        ->required();
    sweep_cmd->add_option("--values", sweep_values, "axis values")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) return run_stage(opts, psnads::Stage::simulate);
        if (decompose->parsed()) return run_stage(opts, psnads::Stage::decompose);
        if (ledger->parsed()) return run_stage(opts, psnads::Stage::ledger);
        if (correlate->parsed()) return run_stage(opts, psnads::Stage::correlate);
        if (oracle->parsed()) return run_stage(opts, psnads::Stage::correlate, true);
        if (sweep_cmd->parsed()) {
            nlohmann::json j = load_json(opts.config_path);
            psnads::SweepAxis axis;
            axis.parameter_path = sweep_param;
            for (double v : sweep_values) axis.values.push_back(v);
            const std::string outdir =
                !opts.output_dir.empty() ? opts.output_dir : j.value("output_dir", "out");
            auto result = psnads::sweep(j, axis, outdir, opts.jobs);
            psnads::write_run(result, outdir);
            return result.all_passed ? 0 : 1;
        }
    } catch (const psnads::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const psnads::integration_error& e) {
        std::cerr << "integration failure: " << e.what() << "\n";
        return 3;
    } catch (const psnads::analysis_error& e) {
        std::cerr << "analysis failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
