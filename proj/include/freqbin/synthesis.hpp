#ifndef FREQBIN_SYNTHESIS_HPP
#define FREQBIN_SYNTHESIS_HPP

#include "freqbin/grid.hpp"

namespace freqbin {

// Per-polarization delays between the two pump passes plus their relative
// phase. Delays are round-trip values: a mirror displaced by d adds 2d of path.
struct SynthesisConfig {
    double dt_h = 0.0;      // s, signal-arm delay
    double dt_v = 0.0;      // s, idler-arm delay
    double phase = 0.0;     // rad, stored in [0, 2*pi)
    double lambda_p = 792e-9;  // m, pump wavelength for path->phase conversion

    double dt_minus() const { return dt_h - dt_v; }
};

// Mirror displacements from the temporal origin (signed, meters).
struct StageGeometry {
    double d1 = 0.0;  // signal-arm mirror
    double d2 = 0.0;  // idler-arm mirror
    double d3 = 0.0;  // pump mirror (phase control)
    static constexpr double path_multiplier = 2.0;  // reflection doubles the path
};

struct Delays {
    double dt_h = 0.0, dt_v = 0.0, dt_minus = 0.0;
};

// dt_h = 2*d1/c, dt_v = 2*d2/c, dt_minus = dt_h - dt_v
Delays displacement_to_delays(const StageGeometry& g, double c_light);

// phi = 2*pi * (2*d3) / lambda_p, reduced mod 2*pi
double phase_from_path(const StageGeometry& g, double lambda_p);

// Checks |dt| against one pump pulse period and wraps phase into [0, 2*pi).
SynthesisConfig validate_synthesis(SynthesisConfig cfg, double rep_rate);

// f'(wa,wb) = f * [1 + e^{i phi} e^{-i(wa dt_h + wb dt_v)}].
// Output is NOT renormalized: the interference changes the total intensity.
JointAmplitude apply_bidirectional(const JointAmplitude& f, const SynthesisConfig& cfg);

// Multiplies by e^{-i(wa tau_a + wb tau_b)}: delays photon a by tau_a and
// photon b by tau_b. Negative values model the compensation interferometer.
JointAmplitude delay_shift(const JointAmplitude& f, double tau_a, double tau_b);

// |f|^2 elementwise
RealMatrix jsi_from_amplitude(const JointAmplitude& f);

// The conjugate-domain state, on time axes with dt = 2*pi/(n*dw).
struct JointTemporalAmplitude {
    std::vector<double> t_a, t_b;  // s
    AmpMatrix values;
    FrequencyGrid source_grid;  // kept so the inverse transform can restore axes
};

// 2D continuous-convention transforms: to time uses the e^{+i w t} kernel and
// a single 1/(2*pi) prefactor for the double integral; the inverse mirrors it.
// A round trip reproduces the input to ~1e-15.
JointTemporalAmplitude jta_transform_to_time(const JointAmplitude& f);
JointAmplitude jta_transform_to_frequency(const JointTemporalAmplitude& jta);

}  // namespace freqbin

#endif
