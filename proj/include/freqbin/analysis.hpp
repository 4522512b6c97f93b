#ifndef FREQBIN_ANALYSIS_HPP
#define FREQBIN_ANALYSIS_HPP

#include <utility>
#include <vector>

#include "freqbin/grid.hpp"

namespace freqbin {

struct SchmidtResult {
    std::vector<double> coefficients;  // descending, sums to 1
    double schmidt_number = 0.0;       // K = 1 / sum(lambda^2)
    double purity = 0.0;               // sum(lambda^2) = 1/K
    std::size_t modes_retained = 0;    // coefficients >= threshold * lambda_1
    bool from_intensity = false;       // phase was discarded upstream (flat-phase JSA)
};

// Singular value decomposition of the amplitude matrix; lambda_i are the
// normalized squared singular values. Modes below threshold*lambda_1 are
// dropped from modes_retained but kept in every sum.
// Throws InvalidInput for a zero or non-finite amplitude.
SchmidtResult schmidt_decompose(const JointAmplitude& f, double threshold = 1e-6);

// Elementwise square root with zero phase (the flat-phase approximation for
// intensity-only data). Throws InvalidInput on negative entries or an
// all-zero table.
JointAmplitude jsa_from_jsi(const RealMatrix& jsi, const FrequencyGrid& grid);

// Row/column sums times dw. sum(m_a)*dw == sum(m_b)*dw == total intensity.
std::pair<std::vector<double>, std::vector<double>> marginals(const RealMatrix& jsi,
                                                              const FrequencyGrid& grid);

// Antidiagonal collapse: intensity vs frequency difference nu_a - nu_b (Hz).
// This is the profile the 2D distributions display; its modulation does not
// suffer the pump-bandwidth washout the single-photon marginals do.
struct DifferenceProfile {
    std::vector<double> axis_hz;  // nu_a - nu_b
    std::vector<double> value;
};
DifferenceProfile difference_profile(const RealMatrix& jsi, const FrequencyGrid& grid);

struct BinReport {
    std::vector<double> centers_hz;   // strictly increasing
    std::vector<double> fwhm_hz;      // per peak
    double spacing_hz = 0.0;          // median of successive center differences
    std::size_t count = 0;            // peaks above the threshold
    bool single_peak = false;         // spacing undefined
};

// Peaks = local maxima above threshold_db (relative to the smoothed envelope
// peak). Envelope smoothing window = 3x the modulation period, with the rough
// period taken from the autocorrelation of the detrended signal.
// Throws InvalidInput when nothing rises above the threshold.
BinReport detect_bins(const std::vector<double>& marginal, const std::vector<double>& axis_hz,
                      double threshold_db);

// Modulation visibility of a profile at a known period (same units as step),
// reported as valley/peak in [0,1]; 1 means no modulation at that period.
double modulation_contrast(const std::vector<double>& values, double step, double period);

// Crops a square window (Hz) around (center_a_hz, anticorrelated partner) and
// returns the flat-phase amplitude of the windowed intensity. Feed the result
// to schmidt_decompose for the intra-bin dimensionality and purity.
// Throws InvalidInput when the window falls outside the grid.
JointAmplitude extract_bin(const RealMatrix& jsi, const FrequencyGrid& grid, double center_a_hz,
                           double window_hz);

}  // namespace freqbin

#endif
