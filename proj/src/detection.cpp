#include "freqbin/detection.hpp"

#include <algorithm>
#include <cmath>

#include "freqbin/constants.hpp"
#include "freqbin/errors.hpp"

namespace freqbin {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    // splitmix64 step on master advanced by the stream index
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double freq_to_time(const DispersionSpec& d, double omega) {
    if (d.d == 0.0) throw InvalidInput("dispersion coefficient must be nonzero");
    const double lambda = wavelength_from_omega(omega);
    if (std::abs(lambda - d.lambda_ref) > d.band_halfwidth)
        throw InvalidInput("frequency outside the dispersion module's band");
    return d.base_delay + d.d * (lambda - d.lambda_ref);
}

double time_to_freq(const DispersionSpec& d, double t) {
    const double lambda = d.lambda_ref + (t - d.base_delay) / d.d;
    return omega_from_wavelength(lambda);
}

double resolution_estimate(const DispersionSpec& d, double timing_spread) {
    return timing_spread / std::abs(d.d);
}

std::vector<PairEvent> sample_pair_events(const PairSource& src, double duration,
                                          std::mt19937_64& rng) {
    if (!(duration > 0.0)) throw InvalidInput("duration must be positive");
    if (!(src.pair_rate > 0.0) || !(src.rep_rate > 0.0))
        throw InvalidInput("pair rate and repetition rate must be positive");
    if (src.jsi.rows() != static_cast<Eigen::Index>(src.grid.n_a) ||
        src.jsi.cols() != static_cast<Eigen::Index>(src.grid.n_b))
        throw InvalidInput("source table shape does not match grid");

    // flattened cumulative distribution for inverse-CDF draws
    const std::size_t cells = static_cast<std::size_t>(src.jsi.size());
    std::vector<double> cdf(cells);
    double acc = 0.0;
    const double* p = src.jsi.data();
    for (std::size_t c = 0; c < cells; ++c) {
        if (p[c] < 0.0) throw InvalidInput("source table must be non-negative");
        acc += p[c];
        cdf[c] = acc;
    }
    if (!(acc > 0.0)) throw InvalidInput("source table is identically zero");

    // Poisson total + uniform pulse index == independent Poisson count per pulse
    const auto n_pulses = static_cast<std::uint64_t>(std::floor(duration * src.rep_rate)) + 1;
    std::poisson_distribution<std::uint64_t> n_pairs_dist(src.pair_rate * duration);
    std::uniform_int_distribution<std::uint64_t> pulse_dist(0, n_pulses - 1);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    const std::uint64_t n_pairs = n_pairs_dist(rng);
    std::vector<PairEvent> out;
    out.reserve(n_pairs);
    for (std::uint64_t k = 0; k < n_pairs; ++k) {
        PairEvent ev;
        ev.t_emit = static_cast<double>(pulse_dist(rng)) / src.rep_rate;
        const double u = u01(rng) * acc;
        const auto cell = static_cast<std::size_t>(
            std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        const std::size_t i = std::min(cell, cells - 1) / src.grid.n_b;
        const std::size_t j = std::min(cell, cells - 1) % src.grid.n_b;
        ev.omega_a = src.grid.omega_a[i];
        ev.omega_b = src.grid.omega_b[j];
        out.push_back(ev);
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const PairEvent& x, const PairEvent& y) { return x.t_emit < y.t_emit; });
    return out;
}

std::vector<Photon> arm_view(const std::vector<PairEvent>& pairs, Channel arm) {
    std::vector<Photon> out;
    out.reserve(pairs.size());
    for (const auto& p : pairs)
        out.push_back({p.t_emit, arm == Channel::signal ? p.omega_a : p.omega_b});
    return out;
}

std::vector<EventRecord> apply_detector(const std::vector<Photon>& photons,
                                        const DetectorSpec& det,
                                        const std::optional<DispersionSpec>& disp,
                                        std::uint8_t node, Channel channel, double duration,
                                        std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::normal_distribution<double> jitter(0.0, det.jitter_sigma > 0.0 ? det.jitter_sigma : 1.0);

    std::vector<EventRecord> out;
    out.reserve(photons.size());
    for (const auto& ph : photons) {
        if (u01(rng) >= det.efficiency) continue;
        double t = ph.t_emit;
        if (disp) t += freq_to_time(*disp, ph.omega);
        if (det.jitter_sigma > 0.0) t += jitter(rng);
        out.push_back({node, channel, t});
    }
    if (det.dark_rate > 0.0 && duration > 0.0) {
        std::poisson_distribution<std::uint64_t> n_dark_dist(det.dark_rate * duration);
        const std::uint64_t n_dark = n_dark_dist(rng);
        std::uniform_real_distribution<double> tdist(0.0, duration);
        for (std::uint64_t k = 0; k < n_dark; ++k) out.push_back({node, channel, tdist(rng)});
    }
    std::sort(out.begin(), out.end(),
              [](const EventRecord& x, const EventRecord& y) { return x.time < y.time; });
    if (det.dead_time > 0.0 && !out.empty()) {
        std::vector<EventRecord> kept;
        kept.reserve(out.size());
        kept.push_back(out.front());
        for (std::size_t i = 1; i < out.size(); ++i)
            if (out[i].time - kept.back().time >= det.dead_time) kept.push_back(out[i]);
        out.swap(kept);
    }
    return out;
}

std::vector<double> event_times(const std::vector<EventRecord>& events) {
    std::vector<double> t;
    t.reserve(events.size());
    for (const auto& e : events) t.push_back(e.time);
    return t;
}

std::vector<std::pair<std::size_t, std::size_t>> greedy_matches(const std::vector<double>& a,
                                                                const std::vector<double>& b,
                                                                double window) {
    struct Cand {
        double adt;
        double tmin;
        std::size_t i, j;
    };
    const double half = window / 2.0;
    std::vector<Cand> cands;
    std::size_t j_lo = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        while (j_lo < b.size() && b[j_lo] < a[i] - half) ++j_lo;
        for (std::size_t j = j_lo; j < b.size() && b[j] <= a[i] + half; ++j)
            cands.push_back({std::abs(a[i] - b[j]), std::min(a[i], b[j]), i, j});
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
        if (x.adt != y.adt) return x.adt < y.adt;
        if (x.tmin != y.tmin) return x.tmin < y.tmin;  // ties to the earlier partner
        if (x.i != y.i) return x.i < y.i;
        return x.j < y.j;
    });
    std::vector<char> used_a(a.size(), 0), used_b(b.size(), 0);
    std::vector<std::pair<std::size_t, std::size_t>> matches;
    for (const auto& c : cands) {
        if (used_a[c.i] || used_b[c.j]) continue;
        used_a[c.i] = used_b[c.j] = 1;
        matches.emplace_back(c.i, c.j);
    }
    std::sort(matches.begin(), matches.end());
    return matches;
}

CoincidenceStats coincidences_and_klyshko(const std::vector<double>& a,
                                          const std::vector<double>& b, double window) {
    CoincidenceStats s;
    s.singles_a = a.size();
    s.singles_b = b.size();
    s.coincidences = greedy_matches(a, b, window).size();
    if (s.singles_a > 0 && s.singles_b > 0) {
        s.klyshko = static_cast<double>(s.coincidences) /
                    std::sqrt(static_cast<double>(s.singles_a) * static_cast<double>(s.singles_b));
        s.klyshko_defined = true;
    }
    return s;
}

RealMatrix tof_reconstruct(const std::vector<double>& events_a, const std::vector<double>& events_b,
                           const std::vector<double>& sync, const DispersionSpec& disp,
                           const FrequencyGrid& grid, double window) {
    if (sync.empty()) throw InvalidInput("sync stream is empty");
    validate_grid(grid);

    double period;
    if (sync.size() >= 2) {
        std::vector<double> gaps(sync.size() - 1);
        for (std::size_t i = 0; i + 1 < sync.size(); ++i) gaps[i] = sync[i + 1] - sync[i];
        std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
        period = gaps[gaps.size() / 2];
    } else {
        throw InvalidInput("need at least two sync pulses to fix the pulse period");
    }
    const double t0 = sync.front();

    const double t_edge_lo = freq_to_time(disp, grid.omega_a.front());
    const double t_edge_hi = freq_to_time(disp, grid.omega_a.back());
    const double t_lo = std::min(t_edge_lo, t_edge_hi);
    const double t_hi = std::max(t_edge_lo, t_edge_hi);
    if (t_hi - t_lo > period)
        throw InvalidInput("grid spans more than one pulse period in time; shrink the span");

    const double dw = grid.step();
    auto bin_of = [&](double t, const std::vector<double>& axis) -> std::ptrdiff_t {
        double rel = std::fmod(t - t0 - t_lo, period);
        if (rel < 0.0) rel += period;
        const double tf = t_lo + rel;
        if (tf > t_hi) return -1;
        const double w = time_to_freq(disp, tf);
        const auto idx = static_cast<std::ptrdiff_t>(std::lround((w - axis.front()) / dw));
        if (idx < 0 || idx >= static_cast<std::ptrdiff_t>(axis.size())) return -1;
        return idx;
    };

    RealMatrix hist = RealMatrix::Zero(static_cast<Eigen::Index>(grid.n_a),
                                       static_cast<Eigen::Index>(grid.n_b));
    for (const auto& [ia, ib] : greedy_matches(events_a, events_b, window)) {
        const std::ptrdiff_t ka = bin_of(events_a[ia], grid.omega_a);
        const std::ptrdiff_t kb = bin_of(events_b[ib], grid.omega_b);
        if (ka >= 0 && kb >= 0) hist(ka, kb) += 1.0;
    }
    return hist;
}

}  // namespace freqbin
