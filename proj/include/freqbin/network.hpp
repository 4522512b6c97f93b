#ifndef FREQBIN_NETWORK_HPP
#define FREQBIN_NETWORK_HPP

#include <optional>

#include "freqbin/analysis.hpp"
#include "freqbin/detection.hpp"

namespace freqbin {

// Imperfect time-tagger clock: t' = t*(1+drift) + offset + noise.
// White per-timestamp Gaussian noise by default; an optional random-walk
// component models correlated sync wander.
struct ClockModel {
    double offset = 0.0;       // s
    double drift = 0.0;        // s/s
    double sync_sigma = 28e-12;  // s, per-timestamp Gaussian
    bool referenced = true;    // fold against the shared pulse-train reference
    bool random_walk = false;
    double rw_sigma = 0.0;     // s per sqrt(s), used when random_walk is set
};

// Applies the clock to a time-sorted stream; output re-sorted.
std::vector<EventRecord> transform_clock(std::vector<EventRecord> events, const ClockModel& clock,
                                         std::mt19937_64& rng);

struct FiberLink {
    double length = 1300.0;        // m
    double group_index = 1.468;
    double dispersion_ps_nm_km = 17.0;  // standard single-mode
    double lambda_ref = 1565e-9;   // m, reference for the link's group delay
    double loss_db = 0.0;          // folded into the remote efficiency

    double propagation_delay() const;
    // total link dispersion, s per meter of wavelength
    double dispersion_total() const;
};

struct FoldedHistogram {
    double bin_width = 30e-12;  // s
    double period = 0.0;        // s, one pulse period
    std::vector<double> counts;
};

struct TwoNodeScenario {
    PairSource source;
    DetectorSpec local_det;
    DispersionSpec local_disp;
    DetectorSpec remote_det;
    FiberLink link;
    ClockModel clock_local;
    ClockModel clock_remote;
};

// Signal photons dispersed and detected locally (node 0); idler photons sent
// through the link and detected remotely (node 1) without spectral
// resolution. Each node's timestamps pass through its clock model.
std::pair<std::vector<EventRecord>, std::vector<EventRecord>> simulate_two_node(
    const TwoNodeScenario& sc, double duration, std::uint64_t master_seed);

struct FoldParams {
    double bin_width = 30e-12;
    double window = 3e-9;  // coincidence window
    bool referenced = true;
    std::optional<double> delay_override;  // gross link delay, else estimated
};

// Estimates the gross link delay from the cross-correlation argmax.
double estimate_gross_delay(const std::vector<double>& local, const std::vector<double>& remote);

// Cross-node coincidences; for each one the local (dispersed) photon's
// arrival time is folded modulo the pulse period - the conditional spectrum
// of the local photon. Unreferenced folding keys on the local-remote time
// difference instead and inherits the remote clock's noise.
FoldedHistogram fold_and_histogram(const std::vector<EventRecord>& local,
                                   const std::vector<EventRecord>& remote, double rep_rate,
                                   const FoldParams& params);

// Modulation visibility at a known period, reported as valley/peak in [0,1]
// (1 = washed out flat).
double folded_modulation_contrast(const FoldedHistogram& h, double period_s);

// Recenters the folded histogram on its circular centroid, converts the time
// axis to frequency through the local dispersion (anchored at lambda_anchor),
// and delegates to detect_bins at the given threshold.
BinReport resolve_report(const FoldedHistogram& h, const DispersionSpec& disp,
                         double lambda_anchor, double threshold_db = -10.0);

}  // namespace freqbin

#endif
