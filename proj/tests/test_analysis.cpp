#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "freqbin/analysis.hpp"
#include "freqbin/constants.hpp"
#include "freqbin/errors.hpp"
#include "freqbin/spectral.hpp"
#include "freqbin/synthesis.hpp"
#include "oracles.hpp"

using namespace freqbin;
using cplx = std::complex<double>;

namespace {

FrequencyGrid unit_grid(std::size_t n) { return build_frequency_grid(0.0, 1.0, n); }

// separable gaussian patch centered at fractional position (ca, cb)
AmpMatrix gaussian_patch(std::size_t n, double ca, double cb, double width) {
    AmpMatrix m = AmpMatrix::Zero(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double x = (double(i) / double(n - 1) - ca) / width;
            const double y = (double(j) / double(n - 1) - cb) / width;
            m(i, j) = std::exp(-x * x - y * y);
        }
    return m;
}

JointAmplitude amp_of(AmpMatrix m, std::size_t n) {
    JointAmplitude f;
    f.grid = unit_grid(n);
    f.values = std::move(m);
    return f;
}

}  // namespace

TEST_CASE("schmidt: separable state has unit dimensionality") {
    const std::size_t n = 48;
    JointAmplitude f = amp_of(gaussian_patch(n, 0.5, 0.5, 0.2), n);
    const SchmidtResult r = schmidt_decompose(f);
    CHECK(r.schmidt_number == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.purity == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.coefficients.front() == doctest::Approx(1.0).epsilon(1e-9));
    // rank-1: second singular value is numerically zero
    CHECK(r.coefficients[1] < 1e-18);
}

TEST_CASE("schmidt: d equal diagonal blocks give K = d") {
    const std::size_t n = 24;
    for (std::size_t d : {2UL, 5UL, 8UL}) {
        AmpMatrix m = AmpMatrix::Zero(n, n);
        for (std::size_t k = 0; k < d; ++k) m(k, k) = 1.0;
        JointAmplitude f = amp_of(std::move(m), n);
        const SchmidtResult r = schmidt_decompose(f);
        CHECK(r.schmidt_number == doctest::Approx(double(d)).epsilon(1e-9));
        CHECK(r.modes_retained == d);
    }
}

TEST_CASE("schmidt: two-mode state with weights 0.9/0.1") {
    const std::size_t n = 32;
    AmpMatrix m = AmpMatrix::Zero(n, n);
    // orthonormal mode pairs on disjoint supports
    m(2, 3) = std::sqrt(0.9);
    m(10, 17) = std::sqrt(0.1);
    JointAmplitude f = amp_of(std::move(m), n);
    const SchmidtResult r = schmidt_decompose(f);
    CHECK(r.coefficients[0] == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(r.coefficients[1] == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(r.purity == doctest::Approx(0.82).epsilon(1e-12));
    CHECK(r.schmidt_number == doctest::Approx(1.0 / 0.82).epsilon(1e-12));

    // independent route: eigenvalues of the reduced matrix f f^dagger
    const auto brute = oracles::schmidt_coefficients_brute(f.values);
    CHECK(brute[0] == doctest::Approx(0.9).epsilon(1e-9));
    CHECK(brute[1] == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("schmidt coefficients match the brute-force reduced matrix") {
    std::mt19937_64 rng(911);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 8 + static_cast<std::size_t>(trial) * 5;
        AmpMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = cplx{u(rng), u(rng)};
        JointAmplitude f = amp_of(std::move(m), n);
        const SchmidtResult r = schmidt_decompose(f);
        const auto brute = oracles::schmidt_coefficients_brute(f.values);
        REQUIRE(brute.size() >= r.coefficients.size());
        for (std::size_t k = 0; k < r.coefficients.size(); ++k)
            CHECK(r.coefficients[k] == doctest::Approx(brute[k]).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("schmidt number is invariant under scaling and one-side phases") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const std::size_t n = 24;
    AmpMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = cplx{u(rng), u(rng)};
    JointAmplitude f = amp_of(m, n);
    const double k0 = schmidt_decompose(f).schmidt_number;

    JointAmplitude scaled = f;
    scaled.values *= cplx(3.7, -0.4);
    CHECK(schmidt_decompose(scaled).schmidt_number == doctest::Approx(k0).epsilon(1e-12));

    JointAmplitude phased = f;
    for (std::size_t i = 0; i < n; ++i) {
        const cplx ph = std::polar(1.0, u(rng) * 3.0);
        for (std::size_t j = 0; j < n; ++j) phased.values(i, j) *= ph;
    }
    CHECK(schmidt_decompose(phased).schmidt_number == doctest::Approx(k0).epsilon(1e-10));
}

TEST_CASE("schmidt rejects degenerate inputs") {
    const std::size_t n = 16;
    JointAmplitude zero = amp_of(AmpMatrix::Zero(n, n), n);
    CHECK_THROWS_AS(schmidt_decompose(zero), InvalidInput);
}

TEST_CASE("flat-phase amplitude from intensity") {
    const std::size_t n = 32;
    const AmpMatrix real_amp = gaussian_patch(n, 0.4, 0.6, 0.15);
    RealMatrix jsi(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) jsi(i, j) = std::norm(real_amp(i, j));

    const JointAmplitude f = jsa_from_jsi(jsi, unit_grid(n));
    CHECK(f.flat_phase);
    for (std::size_t i = 0; i < n; i += 5)
        for (std::size_t j = 0; j < n; j += 5)
            CHECK(f.values(i, j).real() ==
                  doctest::Approx(real_amp(i, j).real()).epsilon(1e-12));
    CHECK(schmidt_decompose(f).from_intensity);

    RealMatrix bad = jsi;
    bad(1, 1) = -1e-3;
    CHECK_THROWS_AS(jsa_from_jsi(bad, unit_grid(n)), InvalidInput);
    CHECK_THROWS_AS(jsa_from_jsi(RealMatrix::Zero(n, n), unit_grid(n)), InvalidInput);
}

TEST_CASE("marginals integrate rows and columns consistently") {
    const std::size_t n = 64;
    const FrequencyGrid g = unit_grid(n);

    RealMatrix uniform = RealMatrix::Constant(n, n, 0.3);
    auto [ma, mb] = marginals(uniform, g);
    for (std::size_t i = 1; i < n; ++i) CHECK(ma[i] == doctest::Approx(ma[0]));
    for (std::size_t j = 1; j < n; ++j) CHECK(mb[j] == doctest::Approx(mb[0]));

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    RealMatrix random(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) random(i, j) = u(rng);
    auto [ra, rb] = marginals(random, g);
    const double dw = g.step();
    double ta = 0.0, tb = 0.0;
    for (double v : ra) ta += v * dw;
    for (double v : rb) tb += v * dw;
    CHECK(ta == doctest::Approx(tb).epsilon(1e-9));
}

TEST_CASE("marginal modulation period for a 20 ps separation is 50 GHz") {
    const PumpSpectrum pump = make_pump_from_wavelength(792e-9, 0.03e-9);
    CrystalSpec crystal;
    crystal.model.omega_ref = pump.omega_p0 / 2.0;
    crystal.model.beta_h = 0.45e-12;
    crystal.model.beta_v = -0.45e-12;
    const FrequencyGrid g =
        build_frequency_grid(pump.omega_p0 / 2.0, kTwoPi * 0.8e12, 1024);
    JointAmplitude f0 = build_jsa(g, pump, crystal, true);
    SynthesisConfig cfg;
    cfg.dt_h = 10e-12;
    cfg.dt_v = -10e-12;
    const JointAmplitude f = apply_bidirectional(f0, cfg);
    auto [ma, mb] = marginals(jsi_from_amplitude(f), g);
    std::vector<double> axis(g.n_a);
    for (std::size_t i = 0; i < axis.size(); ++i) axis[i] = g.omega_a[i] / kTwoPi;
    const BinReport r = detect_bins(ma, axis, -10.0);
    CHECK(r.spacing_hz == doctest::Approx(50e9).epsilon(0.01));
}

TEST_CASE("bin detection on an analytic cosine-modulated envelope") {
    // 100 GHz modulation on a gaussian envelope, constructed in closed form
    const std::size_t n = 2001;
    const double span = 2e12;
    std::vector<double> axis(n), m(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double nu = -span / 2.0 + span * double(i) / double(n - 1);
        axis[i] = 190e12 + nu;
        const double env = std::exp(-nu * nu / (2.0 * 400e9 * 400e9));
        m[i] = env * (1.0 + std::cos(kTwoPi * nu / 100e9));
    }
    const BinReport r = detect_bins(m, axis, -10.0);
    CHECK_FALSE(r.single_peak);
    CHECK(r.spacing_hz == doctest::Approx(100e9).epsilon(0.01));
    CHECK(r.count >= 9);
    // peak near the envelope center should carry FWHM close to the half-lobe
    bool found_center = false;
    for (std::size_t k = 0; k < r.centers_hz.size(); ++k) {
        if (std::abs(r.centers_hz[k] - 190e12) < 5e9) {
            found_center = true;
            CHECK(r.fwhm_hz[k] == doctest::Approx(100e9 / 2.0).epsilon(0.15));
        }
    }
    CHECK(found_center);
}

TEST_CASE("bin detection degenerate cases") {
    const std::size_t n = 501;
    std::vector<double> axis(n), gauss(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = double(i) - double(n / 2);
        axis[i] = double(i) * 1e9;
        gauss[i] = std::exp(-x * x / (2.0 * 40.0 * 40.0));
    }
    const BinReport r = detect_bins(gauss, axis, -10.0);
    CHECK(r.single_peak);
    CHECK(r.count == 1);
    CHECK(r.centers_hz[0] == doctest::Approx(axis[n / 2]).epsilon(1e-6));

    std::vector<double> zeros(n, 0.0);
    CHECK_THROWS_AS(detect_bins(zeros, axis, -10.0), InvalidInput);
}

TEST_CASE("difference profile carries the full antidiagonal sum") {
    const std::size_t n = 32;
    const FrequencyGrid g = unit_grid(n);
    RealMatrix jsi = RealMatrix::Constant(n, n, 1.0);
    const DifferenceProfile p = difference_profile(jsi, g);
    CHECK(p.axis_hz.size() == 2 * n - 1);
    CHECK(p.value[n - 1] == doctest::Approx(double(n)));  // main antidiagonal
    CHECK(p.value.front() == doctest::Approx(1.0));
    CHECK(p.value.back() == doctest::Approx(1.0));
}

TEST_CASE("modulation contrast separates flat from modulated") {
    const std::size_t n = 1000;
    std::vector<double> modulated(n), flat(n, 1.0);
    for (std::size_t i = 0; i < n; ++i)
        modulated[i] = 1.0 + 0.8 * std::cos(kTwoPi * double(i) / 50.0);
    CHECK(modulation_contrast(modulated, 1.0, 50.0) ==
          doctest::Approx((1 - 0.8) / (1 + 0.8)).epsilon(2e-2));
    CHECK(modulation_contrast(flat, 1.0, 50.0) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("extract_bin: separable window is pure, elongated window is not") {
    const std::size_t n = 256;
    const double center_hz = 190e12;
    const FrequencyGrid g = build_frequency_grid(kTwoPi * center_hz, kTwoPi * 400e9, n);

    auto gaussian_jsi = [&](double ssum, double sdiff) {
        // gaussian with independent sum/difference widths (Hz)
        RealMatrix jsi(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const double a = (g.omega_a[i] - g.omega_center) / kTwoPi;
                const double b = (g.omega_b[j] - g.omega_center) / kTwoPi;
                const double s = (a + b) / ssum, d = (a - b) / sdiff;
                jsi(i, j) = std::exp(-(s * s + d * d));
            }
        return jsi;
    };

    // circular: equal widths -> separable -> purity ~ 1
    const RealMatrix circular = gaussian_jsi(60e9, 60e9);
    JointAmplitude bin1 = extract_bin(circular, g, center_hz, 300e9);
    const SchmidtResult pure = schmidt_decompose(bin1);
    CHECK(pure.purity >= 0.99);

    // 3:1 anticorrelated ellipse -> mixed; brute-force oracle agrees
    const RealMatrix elongated = gaussian_jsi(40e9, 120e9);
    JointAmplitude bin2 = extract_bin(elongated, g, center_hz, 300e9);
    const SchmidtResult mixed = schmidt_decompose(bin2);
    CHECK(mixed.purity < 0.8);
    const auto brute = oracles::schmidt_coefficients_brute(bin2.values);
    double brute_purity = 0.0;
    for (double l : brute) brute_purity += l * l;
    CHECK(mixed.purity == doctest::Approx(brute_purity).epsilon(1e-9));

    CHECK_THROWS_AS(extract_bin(circular, g, center_hz + 300e9, 300e9), InvalidInput);
}

TEST_CASE("full-state dimensionality counts non-overlapping bins") {
    const std::size_t n = 192;
    const std::size_t n_bins = 5;
    AmpMatrix m = AmpMatrix::Zero(n, n);
    for (std::size_t k = 0; k < n_bins; ++k) {
        const double c = (double(k) + 0.5) / double(n_bins);
        m += gaussian_patch(n, c, 1.0 - c, 0.02);
    }
    JointAmplitude f = amp_of(std::move(m), n);
    const SchmidtResult r = schmidt_decompose(f);
    CHECK(r.schmidt_number == doctest::Approx(double(n_bins)).epsilon(0.05));
}
