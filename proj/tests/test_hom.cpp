#include <cmath>

#include "doctest.h"
#include "freqbin/constants.hpp"
#include "freqbin/errors.hpp"
#include "freqbin/hom.hpp"
#include "freqbin/spectral.hpp"
#include "freqbin/synthesis.hpp"
#include "oracles.hpp"

using namespace freqbin;

namespace {

JointAmplitude baseline(std::size_t n, double span_hz) {
    const PumpSpectrum pump = make_pump_from_wavelength(792e-9, 0.2e-9);
    CrystalSpec crystal;
    crystal.model.omega_ref = pump.omega_p0 / 2.0;
    const FrequencyGrid g = build_frequency_grid(pump.omega_p0 / 2.0, kTwoPi * span_hz, n);
    return build_jsa(g, pump, crystal, true);
}

// synthesized, walk-off compensated, normalized state
JointAmplitude synthesized(std::size_t n, double span_hz, double dt_minus, double phase) {
    JointAmplitude f0 = baseline(n, span_hz);
    SynthesisConfig cfg;
    cfg.dt_h = dt_minus / 2.0;
    cfg.dt_v = -dt_minus / 2.0;
    cfg.phase = phase;
    JointAmplitude f = apply_bidirectional(f0, cfg);
    f = delay_shift(f, -cfg.dt_h / 2.0, -cfg.dt_v / 2.0);
    normalize(f);
    return f;
}

}  // namespace

TEST_CASE("exchange-symmetric state dips to zero at the origin") {
    JointAmplitude f = baseline(256, 6e12);
    normalize(f);
    const HomCurve c = hom_curve(f, 8e-12, 257);
    const double p0 = c.p[128];  // tau = 0 sample
    CHECK(p0 < 1e-9);
    // distinguishable limit far outside the coherence region
    CHECK(c.p.front() == doctest::Approx(0.5).epsilon(0.01));
    CHECK(c.p.back() == doctest::Approx(0.5).epsilon(0.01));
    // parity for a real symmetric amplitude
    for (std::size_t k = 0; k < c.p.size(); ++k)
        CHECK(c.p[k] == doctest::Approx(c.p[c.p.size() - 1 - k]).epsilon(1e-9).scale(1.0));
    for (double p : c.p) {
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
    }
}

TEST_CASE("hom_curve requires a normalized amplitude") {
    JointAmplitude f = baseline(64, 2e12);  // normalized by build
    f.values *= 2.0;
    CHECK_THROWS_AS(hom_curve(f, 4e-12, 64), InvalidInput);
}

TEST_CASE("fast path agrees with the brute-force double sum") {
    JointAmplitude f = synthesized(48, 1.5e12, 2e-12, 0.6);
    const HomCurve c = hom_curve(f, 8e-12, 17);
    for (std::size_t k = 0; k < c.tau.size(); ++k) {
        const double brute = oracles::hom_probability_brute(f, c.tau[k]);
        CHECK(c.p[k] == doctest::Approx(brute).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("50 GHz state: central dip at the origin, side dips at half the separation") {
    const double dt_minus = 20e-12;  // 50 GHz bins
    JointAmplitude f = synthesized(512, 4e12, dt_minus, 0.0);
    const HomCurve c = hom_curve(f, 3.0 * dt_minus, 601);

    const FringeMetrics fm = fringe_metrics(c);
    CHECK(fm.central == CentralExtremum::dip);
    // fringe period is half the temporal separation; spacing = 1/(2T)
    CHECK(fm.period == doctest::Approx(dt_minus / 2.0).epsilon(0.02));
    CHECK(1.0 / (2.0 * fm.period) == doctest::Approx(50e9).epsilon(0.02));
    CHECK(fm.visibility > 0.9);
    CHECK(fm.visibility <= 1.0 + 1e-12);

    // the central dip reaches zero; the side features only reach ~1/4
    const double p0 = c.p[300];
    CHECK(p0 < 1e-6);
    auto side_value = [&](double tau) {
        std::size_t best = 0;
        for (std::size_t k = 0; k < c.tau.size(); ++k)
            if (std::abs(c.tau[k] - tau) < std::abs(c.tau[best] - tau)) best = k;
        return c.p[best];
    };
    CHECK(side_value(dt_minus / 2.0) == doctest::Approx(0.25).epsilon(0.05));
    CHECK(side_value(-dt_minus / 2.0) == doctest::Approx(0.25).epsilon(0.05));
}

TEST_CASE("pass phase pi inverts the central fringe") {
    const double dt_minus = 10e-12;  // 100 GHz bins
    JointAmplitude f0 = synthesized(512, 4e12, dt_minus, 0.0);
    JointAmplitude fpi = synthesized(512, 4e12, dt_minus, std::numbers::pi);

    const HomCurve c0 = hom_curve(f0, 3.0 * dt_minus, 601);
    const HomCurve cpi = hom_curve(fpi, 3.0 * dt_minus, 601);

    CHECK(fringe_metrics(c0).central == CentralExtremum::dip);
    CHECK(fringe_metrics(cpi).central == CentralExtremum::peak);

    // pointwise inversion of the central feature about 1/2
    const double d0 = c0.p[300] - 0.5;
    const double dpi = cpi.p[300] - 0.5;
    CHECK(std::abs(d0 + dpi) < 1e-6);
}

TEST_CASE("fringe metrics reject degenerate curves") {
    HomCurve flat;
    for (int k = 0; k < 128; ++k) {
        flat.tau.push_back(k * 1e-13);
        flat.p.push_back(0.5);
    }
    CHECK_THROWS_AS(fringe_metrics(flat), InvalidInput);

    HomCurve coarse;  // 4 samples per period: undersampled
    for (int k = 0; k < 128; ++k) {
        coarse.tau.push_back(k * 1e-12);
        coarse.p.push_back(0.5 - 0.4 * std::cos(kTwoPi * k / 4.0));
    }
    CHECK_THROWS_AS(fringe_metrics(coarse), InvalidInput);
}
