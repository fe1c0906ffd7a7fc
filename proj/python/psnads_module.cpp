#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "json.hpp"
#include "psnads/coherence.hpp"
#include "psnads/config.hpp"
#include "psnads/dressed.hpp"
#include "psnads/runner.hpp"

namespace py = pybind11;
using namespace psnads;

namespace {

ScenarioConfig config_from_str(const std::string& config_json) {
    return parse_config(nlohmann::json::parse(config_json));
}

// (t, samples, norm_sq) as plain nested lists; enough for smoke-level use
py::tuple integrate_py(const std::string& config_json) {
    const auto cfg = config_from_str(config_json);
    const auto grid = make_time_grid(cfg.t_start, cfg.t_end, cfg.pulse.carrier,
                                     cfg.samples_per_cycle);
    IntegrateOptions opts{cfg.rel_tol, cfg.abs_tol, cfg.frame, cfg.method};
    const auto traj = integrate(cfg.system, cfg.pulse, cfg.initial_state, grid, opts);
    std::vector<std::vector<std::complex<double>>> amps(traj.samples.size());
    std::vector<double> norms(traj.samples.size());
    for (std::size_t k = 0; k < traj.samples.size(); ++k) {
        amps[k].assign(traj.samples[k].data(),
                       traj.samples[k].data() + traj.samples[k].size());
        norms[k] = traj.norm_sq(k);
    }
    return py::make_tuple(traj.t_grid, amps, norms);
}

std::string run_scenario_py(const std::string& config_json, const std::string& output_dir) {
    auto cfg = config_from_str(config_json);
    if (!output_dir.empty()) cfg.output_dir = output_dir;
    auto result = run_scenario(cfg);
    write_run(result, cfg.output_dir);
    return result.manifest.dump(2);
}

py::dict build_psnads_py(const std::string& config_json, double t) {
    const auto cfg = config_from_str(config_json);
    const auto d = build_psnads(cfg.system, cfg.pulse, t, cfg.offsets);
    py::dict out;
    out["t"] = d.t;
    out["C_r"] = d.real_strength;
    py::list virtuals;
    for (const auto& v : d.virtuals) {
        py::dict vd;
        vd["excited_index"] = v.excited_index;
        vd["C_v"] = v.strength;
        vd["theta"] = v.mixing_angle;
        vd["detuning"] = v.detuning;
        vd["offset"] = v.offset;
        virtuals.append(vd);
    }
    out["virtuals"] = virtuals;
    out["quasi_g"] = d.quasi_g;
    if (d.quasi_e) out["quasi_e"] = *d.quasi_e;
    out["carrier"] = d.carrier;
    return out;
}

}  // namespace

PYBIND11_MODULE(_psnads, m) {
    m.doc() = "Dressed-state phase ledgers for driven, damped level systems";

    m.def("mixing_angle", &mixing_angle, py::arg("delta"), py::arg("rabi"),
          "theta = atan2(Omega_R, Delta) in [0, pi]");
    m.def(
        "quasi_energies",
        [](double omega_g, double omega_e, double carrier, double rabi, double gamma_g,
           double gamma_e) {
            auto [g, e] = quasi_energies(omega_g, omega_e, carrier, rabi, gamma_g, gamma_e);
            return py::make_tuple(g, e);
        },
        py::arg("omega_g"), py::arg("omega_e"), py::arg("carrier"), py::arg("rabi"),
        py::arg("gamma_g") = 0.0, py::arg("gamma_e") = 0.0,
        "complex (omega_G, omega_E) quasi-energies of the two-level pair");
    m.def("integrate", &integrate_py, py::arg("config_json"),
          "solve the TDSE for a JSON scenario; returns (t, amplitudes, norm_sq)");
    m.def("build_psnads", &build_psnads_py, py::arg("config_json"), py::arg("t"),
          "ground dressed-state decomposition at time t");
    m.def("run_scenario", &run_scenario_py, py::arg("config_json"),
          py::arg("output_dir") = std::string(),
          "full pipeline run; writes output files, returns the manifest JSON");
    m.def(
        "visibility",
        [](const std::vector<double>& strengths, const std::vector<double>& offsets) {
            DressedDecomposition d;
            for (std::size_t k = 0; k < strengths.size(); ++k) {
                VirtualComponent v;
                v.strength = strengths[k];
                v.offset = k < offsets.size() ? offsets[k] : 0.0;
                d.virtuals.push_back(v);
            }
            return interference_visibility(d);
        },
        py::arg("strengths"), py::arg("offsets"),
        "phasor-sum interference visibility of virtual components");
    m.attr("__version__") = "0.1.0";
}
