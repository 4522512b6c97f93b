#ifndef FREQBIN_DETECTION_HPP
#define FREQBIN_DETECTION_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "freqbin/grid.hpp"

namespace freqbin {

struct DetectorSpec {
    double efficiency = 0.7;    // fraction, all optical losses folded in
    double jitter_sigma = 0.0;  // s, Gaussian RMS
    double dark_rate = 0.0;     // counts/s
    double dead_time = 0.0;     // s, fixed cut
};

// Linear-in-wavelength group delay of the dispersive fiber module.
struct DispersionSpec {
    double d = -0.895;          // s per meter of wavelength (-895 ps/nm)
    double lambda_ref = 1565e-9;  // m
    double base_delay = 0.0;    // s
    double band_halfwidth = 50e-9;  // m, validity window around lambda_ref
};

enum class Channel : std::uint8_t { signal = 0, idler = 1, sync = 2 };

struct EventRecord {
    std::uint8_t node = 0;
    Channel channel = Channel::signal;
    double time = 0.0;  // s, in that node's clock
};

struct Photon {
    double t_emit = 0.0;  // s
    double omega = 0.0;   // rad/s
};

struct PairEvent {
    double t_emit = 0.0;
    double omega_a = 0.0, omega_b = 0.0;
};

// Probability table over the grid plus the emission statistics.
struct PairSource {
    RealMatrix jsi;  // non-negative; normalized internally
    FrequencyGrid grid;
    double pair_rate = 0.196e6;  // pairs/s
    double rep_rate = 76e6;      // Hz
};

// Reproducible per-purpose substream seeds from one master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

// t = base + D * (lambda(omega) - lambda_ref).
// Throws InvalidInput outside lambda_ref +/- band_halfwidth.
double freq_to_time(const DispersionSpec& d, double omega);
// Inverse of the above (no band check; callers pass folded in-window times).
double time_to_freq(const DispersionSpec& d, double t);
// Achievable wavelength resolution (m) for a given total timing spread (s).
double resolution_estimate(const DispersionSpec& d, double timing_spread);

// Pair emission locked to the pulse train: Poisson-distributed total with the
// pulse index uniform, frequencies drawn from the flattened JSI table by
// inverse CDF. Output sorted by emission time.
std::vector<PairEvent> sample_pair_events(const PairSource& src, double duration,
                                          std::mt19937_64& rng);

std::vector<Photon> arm_view(const std::vector<PairEvent>& pairs, Channel arm);

// Bernoulli(eta) survival, optional dispersive time mapping, Gaussian timing
// jitter, Poisson dark counts over [0, duration); output sorted by time.
std::vector<EventRecord> apply_detector(const std::vector<Photon>& photons,
                                        const DetectorSpec& det,
                                        const std::optional<DispersionSpec>& disp,
                                        std::uint8_t node, Channel channel, double duration,
                                        std::mt19937_64& rng);

std::vector<double> event_times(const std::vector<EventRecord>& events);

// Greedy one-to-one nearest matching inside |dt| <= window/2; ties go to the
// earlier partner. Symmetric under stream swap.
std::vector<std::pair<std::size_t, std::size_t>> greedy_matches(const std::vector<double>& a,
                                                                const std::vector<double>& b,
                                                                double window);

struct CoincidenceStats {
    std::uint64_t singles_a = 0, singles_b = 0, coincidences = 0;
    double klyshko = 0.0;
    bool klyshko_defined = false;
};

CoincidenceStats coincidences_and_klyshko(const std::vector<double>& a,
                                          const std::vector<double>& b, double window);

// Arrival times relative to the pump pulses inverted through the dispersion
// map into (omega_a, omega_b) and histogrammed on the grid. The grid's image
// in time must fit within one pulse period. Throws InvalidInput when the sync
// stream is empty.
RealMatrix tof_reconstruct(const std::vector<double>& events_a, const std::vector<double>& events_b,
                           const std::vector<double>& sync, const DispersionSpec& disp,
                           const FrequencyGrid& grid, double window);

}  // namespace freqbin

#endif
