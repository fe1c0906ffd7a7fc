#pragma once

#include <variant>

namespace psnads {

// Envelope shapes. All values are field amplitudes >= 0; time in natural
// units (hbar = 1, energies == angular frequencies).

struct ConstantEnvelope {
    double amplitude = 0.0;
    double t_on = 0.0;
    double t_off = 0.0;
};

struct GaussianEnvelope {
    double peak = 0.0;
    double center = 0.0;
    double fwhm = 1.0;
};

struct SechEnvelope {
    double peak = 0.0;
    double center = 0.0;
    double width = 1.0;
};

using Envelope = std::variant<ConstantEnvelope, GaussianEnvelope, SechEnvelope>;

struct ConstantPhase {
    double phi0 = 0.0;
};

// phi(t) = phi0 + rate * t^2 / 2
struct LinearChirp {
    double phi0 = 0.0;
    double rate = 0.0;
};

using PhaseMod = std::variant<ConstantPhase, LinearChirp>;

/// A single classical driving field: carrier, envelope and phase modulation.
struct FieldPulse {
    double carrier = 1.0;  // rad/time, > 0
    Envelope envelope = ConstantEnvelope{};
    PhaseMod phase_mod = ConstantPhase{};

    void validate() const;
};

/// Envelope value E(t), >= 0.
double field_amplitude(const FieldPulse& pulse, double t);

/// Slowly varying phase phi(t) (no carrier term).
double field_phase_mod(const FieldPulse& pulse, double t);

/// Total field phase Phi_F(t) = phi(t) + omega * t, continuous (never wrapped).
double field_phase_total(const FieldPulse& pulse, double t);

}  // namespace psnads
