#include "psnads/field_pulse.hpp"

#include <cmath>

#include "psnads/errors.hpp"

namespace psnads {

void FieldPulse::validate() const {
    if (!(carrier > 0.0))
        throw config_error("pulse carrier must be > 0");
    if (const auto* c = std::get_if<ConstantEnvelope>(&envelope)) {
        if (c->amplitude < 0.0) throw config_error("envelope amplitude must be >= 0");
        if (!(c->t_off > c->t_on)) throw config_error("envelope t_off must exceed t_on");
    } else if (const auto* g = std::get_if<GaussianEnvelope>(&envelope)) {
        if (g->peak < 0.0) throw config_error("envelope peak must be >= 0");
        if (!(g->fwhm > 0.0)) throw config_error("envelope fwhm must be > 0");
    } else if (const auto* s = std::get_if<SechEnvelope>(&envelope)) {
        if (s->peak < 0.0) throw config_error("envelope peak must be >= 0");
        if (!(s->width > 0.0)) throw config_error("envelope width must be > 0");
    }
}

double field_amplitude(const FieldPulse& pulse, double t) {
    return std::visit(
        [t](const auto& env) -> double {
            using T = std::decay_t<decltype(env)>;
            if constexpr (std::is_same_v<T, ConstantEnvelope>) {
                return (t >= env.t_on && t <= env.t_off) ? env.amplitude : 0.0;
            } else if constexpr (std::is_same_v<T, GaussianEnvelope>) {
                const double x = (t - env.center) / env.fwhm;
                return env.peak * std::exp(-4.0 * M_LN2 * x * x);
            } else {
                return env.peak / std::cosh((t - env.center) / env.width);
            }
        },
        pulse.envelope);
}

double field_phase_mod(const FieldPulse& pulse, double t) {
    return std::visit(
        [t](const auto& pm) -> double {
            using T = std::decay_t<decltype(pm)>;
            if constexpr (std::is_same_v<T, ConstantPhase>) {
                return pm.phi0;
            } else {
                return pm.phi0 + 0.5 * pm.rate * t * t;
            }
        },
        pulse.phase_mod);
}

double field_phase_total(const FieldPulse& pulse, double t) {
    return field_phase_mod(pulse, t) + pulse.carrier * t;
}

}  // namespace psnads
