#ifndef FREQBIN_SPECTRAL_HPP
#define FREQBIN_SPECTRAL_HPP

#include <string>
#include <vector>

#include "freqbin/grid.hpp"

namespace freqbin {

enum class PumpShape { gaussian, sech2, tabulated };

// Spectral envelope of the pump field, peak-normalized to 1 at omega_p0.
// fwhm is the full width (Hz, ordinary frequency) at which the envelope
// amplitude has fallen to 1/2.
struct PumpSpectrum {
    double omega_p0 = 0.0;  // rad/s
    double fwhm = 0.0;      // Hz
    PumpShape shape = PumpShape::gaussian;
    std::vector<double> table_omega;  // rad/s, increasing (tabulated shape)
    std::vector<double> table_amp;    // peak-normalized on load
};

// Pump with center wavelength lambda_p and an intensity bandwidth of
// delta_lambda, both in meters (bandwidth converted via dnu = c*dl/l^2).
PumpSpectrum make_pump_from_wavelength(double lambda_p, double delta_lambda,
                                       PumpShape shape = PumpShape::gaussian);

// alpha(omega_sum); gaussian: exp(-(w-w0)^2/(2 sigma^2)) with sigma from fwhm.
// Throws InvalidInput when a tabulated pump is queried outside its table.
double pump_envelope(const PumpSpectrum& p, double omega_sum);

// Sampled wavevector curves k(omega) with linear interpolation.
struct DispersionTable {
    std::vector<double> omega;  // rad/s, strictly increasing
    std::vector<double> k_h, k_v, k_p;  // rad/m

    double eval_h(double w) const;
    double eval_v(double w) const;
    double eval_p(double w) const;
};

// 4-column CSV: omega_hz,k_h_rad_per_m,k_v_rad_per_m,k_p_rad_per_m
DispersionTable load_dispersion_csv(const std::string& path);

struct PhaseMatchModel {
    enum class Kind { linearized, tabulated };
    Kind kind = Kind::linearized;

    // linearized: dk0 + beta_h*(wa - omega_ref) + beta_v*(wb - omega_ref)
    double dk0 = 0.0;        // rad/m residual mismatch at degeneracy
    double beta_h = 4.9e-12;  // s/m, inverse-group-velocity difference vs pump
    double beta_v = -4.9e-12; // s/m
    double omega_ref = 0.0;  // rad/s

    DispersionTable table;  // tabulated kind
};

struct CrystalSpec {
    double length = 0.040;           // m
    double poling_period = 21.5e-6;  // m
    PhaseMatchModel model;
};

// Eq. of motion for the grating-assisted mismatch:
//   tabulated:  k_H(wa) + k_V(wb) - k_P(wa+wb) - 2*pi/poling_period
//   linearized: dk0 + beta_h*(wa-w_ref) + beta_v*(wb-w_ref)
double phase_mismatch(const PhaseMatchModel& m, double poling_period, double omega_a,
                      double omega_b);

// L*sinc(dk*L/2), sinc(0)=1 by continuous extension.
double phase_matching_function(double dk, double length);

// f(wa,wb) = alpha(wa+wb) * sinc(dk*L/2) on the grid; optionally normalized
// to unit total intensity. Throws InvalidInput when the grid falls outside a
// tabulated model's range.
JointAmplitude build_jsa(const FrequencyGrid& grid, const PumpSpectrum& pump,
                         const CrystalSpec& crystal, bool normalize_output);

}  // namespace freqbin

#endif
