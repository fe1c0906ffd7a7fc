#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "psnads/coherence.hpp"
#include "psnads/field_pulse.hpp"
#include "psnads/hamiltonian.hpp"
#include "psnads/level_system.hpp"

namespace psnads {

struct AnalysisSpec {
    enum class Type { fast_correlation, slow_correlation, visibility, noise, oracle_check };
    Type type = Type::fast_correlation;
    int i = 0;
    int j = 0;
    NoiseModel noise;
};

struct ScenarioConfig {
    explicit ScenarioConfig(LevelSystem sys) : system(std::move(sys)) {}

    LevelSystem system;
    FieldPulse pulse;
    Eigen::VectorXcd initial_state;
    double t_start = 0.0;
    double t_end = 1.0;
    int samples_per_cycle = 40;
    Frame frame = Frame::rwa;
    Method method = Method::adaptive_rk45;
    std::vector<double> offsets;  // per virtual component, defaults to zeros
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    std::vector<AnalysisSpec> analyses;
    std::string output_dir = "out";
    nlohmann::json raw;  // config echo for the manifest
};

/// Parse and validate. Throws config_error naming the offending field.
ScenarioConfig parse_config(const nlohmann::json& j);

ScenarioConfig load_config_file(const std::string& path);

}  // namespace psnads
