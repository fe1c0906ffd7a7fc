#include "psnads/config.hpp"

#include <cmath>
#include <fstream>

#include "psnads/errors.hpp"

namespace psnads {

using nlohmann::json;

namespace {

double require_number(const json& j, const std::string& key) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw config_error("missing or non-numeric field: " + key);
    return j.at(key).get<double>();
}

double number_or(const json& j, const std::string& key, double fallback) {
    return j.contains(key) ? require_number(j, key) : fallback;
}

LevelSystem parse_system(const json& j) {
    if (!j.contains("levels") || !j.at("levels").is_array())
        throw config_error("system.levels must be an array");
    std::vector<Level> levels;
    for (const auto& lj : j.at("levels")) {
        Level lv;
        lv.label = lj.value("label", "level" + std::to_string(levels.size()));
        lv.bohr_frequency = require_number(lj, "omega");
        lv.damping = number_or(lj, "gamma", 0.0);
        lv.initial_phase = number_or(lj, "phase", 0.0);
        levels.push_back(std::move(lv));
    }
    std::map<std::pair<int, int>, double> dipoles;
    for (const auto& dj : j.value("dipoles", json::array())) {
        const int a = dj.at("a").get<int>();
        const int b = dj.at("b").get<int>();
        dipoles[{a, b}] = require_number(dj, "mu");
    }
    return LevelSystem(std::move(levels), std::move(dipoles));
}

FieldPulse parse_pulse(const json& j) {
    FieldPulse pulse;
    pulse.carrier = require_number(j, "carrier");
    const json& env = j.at("envelope");
    const std::string shape = env.at("shape").get<std::string>();
    if (shape == "constant") {
        pulse.envelope = ConstantEnvelope{require_number(env, "amplitude"),
                                          require_number(env, "t_on"),
                                          require_number(env, "t_off")};
    } else if (shape == "gaussian") {
        pulse.envelope = GaussianEnvelope{require_number(env, "peak"),
                                          require_number(env, "center"),
                                          require_number(env, "fwhm")};
    } else if (shape == "sech") {
        pulse.envelope = SechEnvelope{require_number(env, "peak"),
                                      require_number(env, "center"),
                                      require_number(env, "width")};
    } else {
        throw config_error("unknown envelope shape: " + shape);
    }
    if (j.contains("phase")) {
        const json& pm = j.at("phase");
        const std::string pshape = pm.value("shape", "constant");
        if (pshape == "constant") {
            pulse.phase_mod = ConstantPhase{number_or(pm, "phi0", 0.0)};
        } else if (pshape == "linear_chirp") {
            pulse.phase_mod =
                LinearChirp{number_or(pm, "phi0", 0.0), require_number(pm, "rate")};
        } else {
            throw config_error("unknown phase modulation shape: " + pshape);
        }
    }
    pulse.validate();
    return pulse;
}

AnalysisSpec parse_analysis(const json& j) {
    AnalysisSpec spec;
    const std::string type = j.at("type").get<std::string>();
    if (type == "fast_correlation") {
        spec.type = AnalysisSpec::Type::fast_correlation;
        spec.i = j.value("i", 0);
    } else if (type == "slow_correlation") {
        spec.type = AnalysisSpec::Type::slow_correlation;
        spec.i = j.value("i", 0);
        spec.j = j.value("j", 0);
    } else if (type == "visibility") {
        spec.type = AnalysisSpec::Type::visibility;
    } else if (type == "noise") {
        spec.type = AnalysisSpec::Type::noise;
        spec.noise.sigma_jump = require_number(j, "sigma");
        spec.noise.n_realizations = j.value("n", 1);
        spec.noise.seed = j.value("seed", std::uint64_t{0});
        if (spec.noise.sigma_jump < 0.0)
            throw config_error("noise sigma must be >= 0");
        if (spec.noise.n_realizations < 1)
            throw config_error("noise n must be >= 1");
    } else if (type == "oracle_check") {
        spec.type = AnalysisSpec::Type::oracle_check;
    } else {
        throw config_error("unknown analysis type: " + type);
    }
    return spec;
}

}  // namespace

ScenarioConfig parse_config(const json& j) {
    if (!j.contains("system")) throw config_error("missing field: system");
    if (!j.contains("pulse")) throw config_error("missing field: pulse");
    ScenarioConfig cfg(parse_system(j.at("system")));
    cfg.raw = j;
    cfg.pulse = parse_pulse(j.at("pulse"));

    const json& time = j.at("time");
    cfg.t_start = require_number(time, "start");
    cfg.t_end = require_number(time, "end");
    cfg.samples_per_cycle = time.value("samples_per_cycle", 40);
    if (!(cfg.t_end > cfg.t_start)) throw config_error("time.end must exceed time.start");
    if (cfg.samples_per_cycle < 20)
        throw config_error("time.samples_per_cycle must be >= 20");

    const std::string frame = j.value("frame", "rwa");
    if (frame == "rwa") cfg.frame = Frame::rwa;
    else if (frame == "lab") cfg.frame = Frame::lab;
    else throw config_error("frame must be \"lab\" or \"rwa\"");

    const std::string method = j.value("method", "adaptive_rk45");
    if (method == "adaptive_rk45") cfg.method = Method::adaptive_rk45;
    else if (method == "fixed_rk4") cfg.method = Method::fixed_rk4;
    else throw config_error("method must be \"adaptive_rk45\" or \"fixed_rk4\"");

    if (!j.contains("initial_state") || !j.at("initial_state").is_array())
        throw config_error("initial_state must be an array of [re, im] pairs");
    const auto& init = j.at("initial_state");
    if (static_cast<int>(init.size()) != cfg.system.size())
        throw config_error("initial_state length must equal the level count");
    cfg.initial_state.resize(cfg.system.size());
    for (std::size_t k = 0; k < init.size(); ++k) {
        const auto& a = init[k];
        if (!a.is_array() || a.size() != 2)
            throw config_error("initial_state entries must be [re, im] pairs");
        cfg.initial_state[static_cast<Eigen::Index>(k)] =
            std::complex<double>(a[0].get<double>(), a[1].get<double>());
    }
    if (std::abs(cfg.initial_state.squaredNorm() - 1.0) > 1e-9)
        throw config_error("initial_state norm must be 1 within 1e-9");

    const auto virtual_count = cfg.system.coupled_excited().size();
    cfg.offsets.assign(virtual_count, 0.0);
    if (j.contains("offsets")) {
        const auto& off = j.at("offsets");
        if (off.size() != virtual_count)
            throw config_error("offsets length must equal the virtual count (" +
                               std::to_string(virtual_count) + ")");
        for (std::size_t k = 0; k < off.size(); ++k) cfg.offsets[k] = off[k].get<double>();
    }

    if (j.contains("tolerances")) {
        cfg.rel_tol = number_or(j.at("tolerances"), "rel", cfg.rel_tol);
        cfg.abs_tol = number_or(j.at("tolerances"), "abs", cfg.abs_tol);
    }
    if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0))
        throw config_error("tolerances must be > 0");

    for (const auto& aj : j.value("analyses", json::array()))
        cfg.analyses.push_back(parse_analysis(aj));

    cfg.output_dir = j.value("output_dir", "out");
    return cfg;
}

ScenarioConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw config_error(std::string("config parse error: ") + e.what());
    }
    return parse_config(j);
}

}  // namespace psnads
