#include "freqbin/network.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "freqbin/constants.hpp"
#include "freqbin/errors.hpp"

namespace freqbin {

std::vector<EventRecord> transform_clock(std::vector<EventRecord> events, const ClockModel& clock,
                                         std::mt19937_64& rng) {
    std::normal_distribution<double> white(0.0, clock.sync_sigma > 0.0 ? clock.sync_sigma : 1.0);
    std::normal_distribution<double> unit(0.0, 1.0);
    double walk = 0.0, prev_t = events.empty() ? 0.0 : events.front().time;
    for (auto& e : events) {
        if (clock.random_walk && clock.rw_sigma > 0.0) {
            const double dt = std::max(0.0, e.time - prev_t);
            walk += unit(rng) * clock.rw_sigma * std::sqrt(dt);
            prev_t = e.time;
        }
        double t = e.time * (1.0 + clock.drift) + clock.offset + walk;
        if (clock.sync_sigma > 0.0) t += white(rng);
        e.time = t;
    }
    std::sort(events.begin(), events.end(),
              [](const EventRecord& x, const EventRecord& y) { return x.time < y.time; });
    return events;
}

double FiberLink::propagation_delay() const { return length * group_index / kSpeedOfLight; }

double FiberLink::dispersion_total() const {
    // ps/nm/km -> s per meter of wavelength for the whole span
    return dispersion_ps_nm_km * (length / 1000.0) * 1e-12 / 1e-9;
}

std::pair<std::vector<EventRecord>, std::vector<EventRecord>> simulate_two_node(
    const TwoNodeScenario& sc, double duration, std::uint64_t master_seed) {
    std::mt19937_64 rng_pairs(derive_seed(master_seed, 0));
    std::mt19937_64 rng_local(derive_seed(master_seed, 1));
    std::mt19937_64 rng_remote(derive_seed(master_seed, 2));
    std::mt19937_64 rng_clk_local(derive_seed(master_seed, 3));
    std::mt19937_64 rng_clk_remote(derive_seed(master_seed, 4));

    const auto pairs = sample_pair_events(sc.source, duration, rng_pairs);

    auto local = apply_detector(arm_view(pairs, Channel::signal), sc.local_det, sc.local_disp, 0,
                                Channel::signal, duration, rng_local);

    // idler: link propagation plus the link's chromatic dispersion, then a
    // spectrally blind detector with the fiber loss folded into its efficiency
    std::vector<Photon> idlers = arm_view(pairs, Channel::idler);
    const double delay = sc.link.propagation_delay();
    const double d_link = sc.link.dispersion_total();
    for (auto& ph : idlers) {
        const double lambda = wavelength_from_omega(ph.omega);
        ph.t_emit += delay + d_link * (lambda - sc.link.lambda_ref);
    }
    DetectorSpec remote_det = sc.remote_det;
    remote_det.efficiency *= std::pow(10.0, -sc.link.loss_db / 10.0);
    auto remote = apply_detector(idlers, remote_det, std::nullopt, 1, Channel::idler, duration,
                                 rng_remote);

    local = transform_clock(std::move(local), sc.clock_local, rng_clk_local);
    remote = transform_clock(std::move(remote), sc.clock_remote, rng_clk_remote);
    return {std::move(local), std::move(remote)};
}

double estimate_gross_delay(const std::vector<double>& local, const std::vector<double>& remote) {
    if (local.empty() || remote.empty()) throw InvalidInput("cannot calibrate on empty streams");
    auto median_of = [](std::vector<double> v) {
        std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
        return v[v.size() / 2];
    };
    // the median difference centers the search but is only good to the
    // statistical spread of the streams, so the first pass casts a wide net
    double guess = median_of(remote) - median_of(local);

    for (auto [half_range, bin] : {std::pair{200e-6, 2e-9}, std::pair{8e-9, 100e-12}}) {
        const auto n_bins = static_cast<std::size_t>(std::ceil(2.0 * half_range / bin));
        std::vector<std::uint64_t> hist(n_bins, 0);
        std::size_t j_lo = 0;
        for (double t : local) {
            const double lo = t + guess - half_range, hi = t + guess + half_range;
            while (j_lo < remote.size() && remote[j_lo] < lo) ++j_lo;
            for (std::size_t j = j_lo; j < remote.size() && remote[j] < hi; ++j) {
                const auto k = static_cast<std::size_t>((remote[j] - lo) / bin);
                if (k < n_bins) ++hist[k];
            }
        }
        const auto best = std::max_element(hist.begin(), hist.end());
        if (*best == 0) return guess;  // no correlation found; keep the coarse guess
        const auto k = static_cast<std::size_t>(best - hist.begin());
        guess += (static_cast<double>(k) + 0.5) * bin - half_range;
    }
    return guess;
}

FoldedHistogram fold_and_histogram(const std::vector<EventRecord>& local,
                                   const std::vector<EventRecord>& remote, double rep_rate,
                                   const FoldParams& params) {
    if (!(rep_rate > 0.0)) throw InvalidInput("repetition rate must be positive");
    const double period = 1.0 / rep_rate;

    const auto ta = event_times(local);
    auto tb = event_times(remote);
    const double gross =
        params.delay_override ? *params.delay_override : estimate_gross_delay(ta, tb);
    for (auto& t : tb) t -= gross;

    FoldedHistogram h;
    h.bin_width = params.bin_width;
    h.period = period;
    const auto n_bins = static_cast<std::size_t>(std::ceil(period / params.bin_width));
    h.counts.assign(n_bins, 0.0);

    for (const auto& [i, j] : greedy_matches(ta, tb, params.window)) {
        const double key = params.referenced ? ta[i] : ta[i] - tb[j];
        double folded = std::fmod(key, period);
        if (folded < 0.0) folded += period;
        const auto k = std::min(static_cast<std::size_t>(folded / params.bin_width), n_bins - 1);
        h.counts[k] += 1.0;
    }
    return h;
}

double folded_modulation_contrast(const FoldedHistogram& h, double period_s) {
    if (!(period_s > 0.0)) return 1.0;
    return modulation_contrast(h.counts, h.bin_width, period_s);
}

BinReport resolve_report(const FoldedHistogram& h, const DispersionSpec& disp,
                         double lambda_anchor, double threshold_db) {
    const double total = std::accumulate(h.counts.begin(), h.counts.end(), 0.0);
    if (!(total > 0.0)) throw InvalidInput("folded histogram is empty");
    const std::size_t n = h.counts.size();

    // circular centroid -> rotate the fold seam into the empty tail region
    std::complex<double> mean_dir = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        mean_dir += h.counts[k] * std::polar(1.0, kTwoPi * static_cast<double>(k) / double(n));
    double centroid = std::arg(mean_dir) / kTwoPi * double(n);
    if (centroid < 0.0) centroid += double(n);
    const auto shift = static_cast<std::ptrdiff_t>(std::lround(double(n) / 2.0 - centroid));

    std::vector<double> rotated(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto src = static_cast<std::size_t>(
            ((static_cast<std::ptrdiff_t>(k) - shift) % static_cast<std::ptrdiff_t>(n) + n) % n);
        rotated[k] = h.counts[src];
    }

    // frequency axis anchored at the centroid: dnu/dt = -c/(lambda^2 D)
    const double slope =
        -kSpeedOfLight / (lambda_anchor * lambda_anchor * disp.d);  // Hz per second
    const double nu_anchor = kSpeedOfLight / lambda_anchor;
    std::vector<double> axis(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = (static_cast<double>(k) - double(n) / 2.0 + 0.5) * h.bin_width;
        axis[k] = nu_anchor + slope * t;
    }
    if (slope < 0.0) {
        std::reverse(axis.begin(), axis.end());
        std::reverse(rotated.begin(), rotated.end());
    }
    return detect_bins(rotated, axis, threshold_db);
}

}  // namespace freqbin
