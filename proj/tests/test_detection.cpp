#include <cmath>
#include <numeric>

#include "doctest.h"
#include "freqbin/constants.hpp"
#include "freqbin/detection.hpp"
#include "freqbin/errors.hpp"
#include "freqbin/io.hpp"
#include "freqbin/spectral.hpp"

using namespace freqbin;

namespace {

DispersionSpec module_50km() {
    DispersionSpec d;
    d.d = -895e-12 / 1e-9;
    d.lambda_ref = 1565e-9;
    return d;
}

// anticorrelated two-gaussian toy source on a small grid
PairSource toy_source(std::size_t n, double span_hz, double rate) {
    PairSource src;
    src.grid = build_frequency_grid(omega_from_wavelength(1584e-9), kTwoPi * span_hz, n);
    src.jsi.resize(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double a = (src.grid.omega_a[i] - src.grid.omega_center) / kTwoPi;
            const double b = (src.grid.omega_b[j] - src.grid.omega_center) / kTwoPi;
            const double s = (a + b) / 30e9, d = (a - b) / (span_hz / 3.0);
            src.jsi(i, j) = std::exp(-(s * s + d * d));
        }
    src.jsi /= src.jsi.sum();
    src.pair_rate = rate;
    return src;
}

}  // namespace

TEST_CASE("dispersive frequency-to-time mapping") {
    const DispersionSpec d = module_50km();
    const double w_ref = omega_from_wavelength(d.lambda_ref);
    CHECK(freq_to_time(d, w_ref) == doctest::Approx(d.base_delay).epsilon(1e-12));

    const double w_plus = omega_from_wavelength(d.lambda_ref + 1e-9);
    CHECK(freq_to_time(d, w_plus) - freq_to_time(d, w_ref) ==
          doctest::Approx(-895e-12).epsilon(1e-9));

    CHECK_THROWS_AS(freq_to_time(d, omega_from_wavelength(d.lambda_ref + 60e-9)), InvalidInput);

    // round trip through the inverse map
    const double w = omega_from_wavelength(1580e-9);
    CHECK(time_to_freq(d, freq_to_time(d, w)) == doctest::Approx(w).epsilon(1e-12));

    // spectral resolution for the measured 130 ps system spread: ~0.14 nm
    CHECK(resolution_estimate(d, 130e-12) == doctest::Approx(0.14e-9).epsilon(0.05));
}

TEST_CASE("pair sampling: counts, pulse locking and table fidelity") {
    PairSource src = toy_source(32, 1e12, 0.196e6);
    std::mt19937_64 rng(derive_seed(1234, 0));
    const auto pairs = sample_pair_events(src, 1.0, rng);

    // Poisson count within 3 sigma of rate * duration
    const double expect = 0.196e6;
    CHECK(std::abs(double(pairs.size()) - expect) < 3.0 * std::sqrt(expect));

    // emission times lock to the pulse train
    for (std::size_t k = 0; k < pairs.size(); k += 997) {
        const double cycles = pairs[k].t_emit * src.rep_rate;
        CHECK(std::abs(cycles - std::round(cycles)) < 1e-6);
    }
    for (std::size_t k = 1; k < pairs.size(); ++k) CHECK(pairs[k].t_emit >= pairs[k - 1].t_emit);

    // delta-function table: every draw lands in the single nonzero cell
    PairSource delta = src;
    delta.jsi.setZero();
    delta.jsi(7, 9) = 1.0;
    std::mt19937_64 rng2(7);
    const auto fixed = sample_pair_events(delta, 0.05, rng2);
    for (const auto& p : fixed) {
        CHECK(p.omega_a == delta.grid.omega_a[7]);
        CHECK(p.omega_b == delta.grid.omega_b[9]);
    }
}

TEST_CASE("pair sampling reproduces the table (chi-squared)") {
    // broad table so most cells carry enough expectation for the test
    PairSource src;
    src.grid = build_frequency_grid(omega_from_wavelength(1584e-9), kTwoPi * 1e12, 16);
    src.jsi.resize(16, 16);
    for (std::size_t i = 0; i < 16; ++i)
        for (std::size_t j = 0; j < 16; ++j) {
            const double x = double(i) - 7.5, y = double(j) - 7.5;
            src.jsi(i, j) = std::exp(-(x * x + y * y) / 40.0);
        }
    src.jsi /= src.jsi.sum();
    src.pair_rate = 1e6;
    std::mt19937_64 rng(derive_seed(99, 0));
    const auto pairs = sample_pair_events(src, 1.0, rng);

    RealMatrix hist = RealMatrix::Zero(16, 16);
    for (const auto& p : pairs) {
        std::size_t i = 0, j = 0;
        while (src.grid.omega_a[i] != p.omega_a) ++i;
        while (src.grid.omega_b[j] != p.omega_b) ++j;
        hist(i, j) += 1.0;
    }
    const double n = double(pairs.size());
    double chi2 = 0.0;
    int dof = 0;
    for (std::size_t i = 0; i < 16; ++i)
        for (std::size_t j = 0; j < 16; ++j) {
            const double e = n * src.jsi(i, j);
            if (e < 5.0) continue;
            chi2 += (hist(i, j) - e) * (hist(i, j) - e) / e;
            ++dof;
        }
    REQUIRE(dof > 50);
    CHECK(chi2 / dof == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("detector channel: identity, loss-only and dispersive modes") {
    PairSource src = toy_source(32, 1e12, 1e5);
    std::mt19937_64 rng(derive_seed(5, 0));
    const auto pairs = sample_pair_events(src, 0.01, rng);
    const auto photons = arm_view(pairs, Channel::signal);

    DetectorSpec ideal;
    ideal.efficiency = 1.0;
    std::mt19937_64 r1(1);
    const auto ev = apply_detector(photons, ideal, std::nullopt, 0, Channel::signal, 0.01, r1);
    REQUIRE(ev.size() == photons.size());
    for (std::size_t k = 0; k < ev.size(); ++k) CHECK(ev[k].time == photons[k].t_emit);

    DetectorSpec blind;
    blind.efficiency = 0.0;
    blind.dark_rate = 2000.0;
    std::mt19937_64 r2(2);
    const auto darks = apply_detector(photons, blind, std::nullopt, 0, Channel::signal, 0.01, r2);
    CHECK(std::abs(double(darks.size()) - 20.0) < 3.0 * std::sqrt(20.0) + 1.0);

    // dispersion shifts each timestamp by the frequency-dependent delay
    const DispersionSpec disp = module_50km();
    std::mt19937_64 r3(3);
    const auto dispersed =
        apply_detector({photons[0]}, ideal, disp, 0, Channel::signal, 0.01, r3);
    CHECK(dispersed[0].time ==
          doctest::Approx(photons[0].t_emit + freq_to_time(disp, photons[0].omega)));
}

TEST_CASE("greedy matching: identity, accidentals and symmetry") {
    // identical streams pair off completely
    std::vector<double> a;
    for (int k = 0; k < 1000; ++k) a.push_back(k * 1e-6);
    const CoincidenceStats s1 = coincidences_and_klyshko(a, a, 3e-9);
    CHECK(s1.coincidences == 1000);
    CHECK(s1.klyshko == doctest::Approx(1.0));

    // independent Poisson streams: accidental rate r1*r2*window*T
    std::mt19937_64 rng(derive_seed(77, 1));
    std::exponential_distribution<double> gap(1e6);
    std::vector<double> p1, p2;
    double t = 0.0;
    while (t < 1.0) p1.push_back(t += gap(rng));
    t = 0.0;
    while (t < 1.0) p2.push_back(t += gap(rng));
    const double window = 1e-9;
    const CoincidenceStats s2 = coincidences_and_klyshko(p1, p2, window);
    const double expect = 1e6 * 1e6 * window * 1.0;  // ~1000 accidentals
    CHECK(double(s2.coincidences) == doctest::Approx(expect).epsilon(0.10));

    // swap symmetry of the one-to-one matcher
    const CoincidenceStats s3 = coincidences_and_klyshko(p2, p1, window);
    CHECK(s2.coincidences == s3.coincidences);

    const CoincidenceStats s4 = coincidences_and_klyshko({}, p1, window);
    CHECK(s4.coincidences == 0);
    CHECK_FALSE(s4.klyshko_defined);
}

TEST_CASE("klyshko estimator is unbiased over seeded runs") {
    PairSource src = toy_source(32, 1e12, 1e5);
    DetectorSpec det;
    det.efficiency = 0.1;
    const double duration = 0.2;

    std::vector<double> estimates;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        std::mt19937_64 rp(derive_seed(seed, 0)), ra(derive_seed(seed, 1)),
            rb(derive_seed(seed, 2));
        const auto pairs = sample_pair_events(src, duration, rp);
        const auto ea = apply_detector(arm_view(pairs, Channel::signal), det, std::nullopt, 0,
                                       Channel::signal, duration, ra);
        const auto eb = apply_detector(arm_view(pairs, Channel::idler), det, std::nullopt, 0,
                                       Channel::idler, duration, rb);
        const auto st = coincidences_and_klyshko(event_times(ea), event_times(eb), 3e-9);
        REQUIRE(st.klyshko_defined);
        estimates.push_back(st.klyshko);
    }
    const double mean =
        std::accumulate(estimates.begin(), estimates.end(), 0.0) / estimates.size();
    double var = 0.0;
    for (double e : estimates) var += (e - mean) * (e - mean);
    var /= (estimates.size() - 1);
    const double sigma_mean = std::sqrt(var / estimates.size());
    CHECK(std::abs(mean - 0.1) < 2.0 * sigma_mean);
}

TEST_CASE("noiseless reconstruction reproduces the source table") {
    const std::size_t n = 64;
    PairSource src = toy_source(n, 0.8e12, 1e7);
    std::mt19937_64 rp(derive_seed(11, 0)), ra(derive_seed(11, 1)), rb(derive_seed(11, 2));
    const double duration = 0.1;  // 1e6 pairs
    const auto pairs = sample_pair_events(src, duration, rp);

    DetectorSpec ideal;
    ideal.efficiency = 1.0;
    const DispersionSpec disp = module_50km();
    const auto ea = apply_detector(arm_view(pairs, Channel::signal), ideal, disp, 0,
                                   Channel::signal, duration, ra);
    const auto eb = apply_detector(arm_view(pairs, Channel::idler), ideal, disp, 0,
                                   Channel::idler, duration, rb);

    std::vector<double> sync;
    for (int k = 0; k < 8; ++k) sync.push_back(k / src.rep_rate);

    const RealMatrix recon =
        tof_reconstruct(event_times(ea), event_times(eb), sync, disp, src.grid, 24e-9);
    // same-pulse multi-pair events occasionally steal partners in the
    // one-to-one matcher; losses stay at the e-5 level
    CHECK(recon.sum() == doctest::Approx(double(pairs.size())).epsilon(1e-4));

    double sab = 0, saa = 0, sbb = 0;
    const double ma = recon.mean(), mb = src.jsi.mean();
    for (Eigen::Index i = 0; i < recon.size(); ++i) {
        const double x = recon.data()[i] - ma, y = src.jsi.data()[i] - mb;
        sab += x * y;
        saa += x * x;
        sbb += y * y;
    }
    CHECK(sab / std::sqrt(saa * sbb) > 0.999);

    std::vector<double> no_sync;
    CHECK_THROWS_AS(tof_reconstruct(event_times(ea), event_times(eb), no_sync, disp, src.grid,
                                    24e-9),
                    InvalidInput);
}

TEST_CASE("reconstruction blur scales with detector jitter") {
    const std::size_t n = 192;
    PairSource src = toy_source(n, 0.3e12, 1e7);
    src.jsi.setZero();
    src.jsi(n / 2, n / 2) = 1.0;  // single spectral line

    const DispersionSpec disp = module_50km();
    auto fwhm_for = [&](double sigma) {
        DetectorSpec det;
        det.efficiency = 1.0;
        det.jitter_sigma = sigma;
        std::mt19937_64 rp(derive_seed(21, 0)), ra(derive_seed(21, 1)), rb(derive_seed(21, 2));
        const double duration = 0.005;
        const auto pairs = sample_pair_events(src, duration, rp);
        const auto ea = apply_detector(arm_view(pairs, Channel::signal), det, disp, 0,
                                       Channel::signal, duration, ra);
        const auto eb = apply_detector(arm_view(pairs, Channel::idler), det, disp, 0,
                                       Channel::idler, duration, rb);
        std::vector<double> sync = {0.0, 1.0 / src.rep_rate};
        const RealMatrix recon =
            tof_reconstruct(event_times(ea), event_times(eb), sync, disp, src.grid, 24e-9);
        std::vector<double> marg(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) marg[i] += recon(i, j);
        // FWHM in wavelength units via interpolation
        const double peak = *std::max_element(marg.begin(), marg.end());
        const auto apex = std::max_element(marg.begin(), marg.end()) - marg.begin();
        double lo = 0, hi = 0;
        for (std::size_t i = apex; i-- > 0;)
            if (marg[i] < peak / 2) {
                lo = double(i) + (peak / 2 - marg[i]) / (marg[i + 1] - marg[i]);
                break;
            }
        for (std::size_t i = apex; i < n; ++i)
            if (marg[i] < peak / 2) {
                hi = double(i) - (peak / 2 - marg[i]) / (marg[i - 1] - marg[i]);
                break;
            }
        const double dlam = std::abs(wavelength_from_omega(src.grid.omega_a[1]) -
                                     wavelength_from_omega(src.grid.omega_a[0]));
        return (hi - lo) * dlam;
    };

    const double f1 = fwhm_for(50e-12);
    const double f2 = fwhm_for(100e-12);
    CHECK(f2 / f1 == doctest::Approx(2.0).epsilon(0.10));
    // absolute scale: FWHM ~ 2.355 * sigma / |D|
    CHECK(f1 == doctest::Approx(kFwhmPerSigma * 50e-12 / 0.895).epsilon(0.10));
}

TEST_CASE("event generation is deterministic and serializable") {
    PairSource src = toy_source(32, 1e12, 1e5);
    DetectorSpec det;
    det.efficiency = 0.5;
    det.jitter_sigma = 40e-12;
    det.dark_rate = 500.0;

    auto generate = [&](std::uint64_t seed) {
        std::mt19937_64 rp(derive_seed(seed, 0)), ra(derive_seed(seed, 1));
        const auto pairs = sample_pair_events(src, 0.05, rp);
        return apply_detector(arm_view(pairs, Channel::signal), det, std::nullopt, 0,
                              Channel::signal, 0.05, ra);
    };
    const auto e1 = generate(42), e2 = generate(42);
    REQUIRE(e1.size() == e2.size());
    for (std::size_t k = 0; k < e1.size(); ++k) CHECK(e1[k].time == e2[k].time);

    const std::string path = "/tmp/freqbin_events_test.bin";
    write_events_binary(path, e1);
    const auto back = read_events_binary(path);
    REQUIRE(back.size() == e1.size());
    for (std::size_t k = 0; k < e1.size(); ++k) {
        CHECK(back[k].node == e1[k].node);
        CHECK(back[k].channel == e1[k].channel);
        CHECK(std::abs(back[k].time - e1[k].time) <= 0.5e-12);
    }
}

TEST_CASE("dead time drops close followers") {
    std::vector<Photon> photons;
    for (int k = 0; k < 10; ++k) photons.push_back({k * 1e-9, omega_from_wavelength(1584e-9)});
    DetectorSpec det;
    det.efficiency = 1.0;
    det.dead_time = 2.5e-9;
    std::mt19937_64 rng(3);
    const auto ev = apply_detector(photons, det, std::nullopt, 0, Channel::signal, 1e-8, rng);
    CHECK(ev.size() == 4);  // every third pulse survives a 2.5 ns hold-off
}
