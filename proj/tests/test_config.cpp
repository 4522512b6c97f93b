#include <cmath>

#include "doctest.h"
#include "freqbin/config.hpp"
#include "freqbin/constants.hpp"
#include "freqbin/errors.hpp"

using namespace freqbin;

TEST_CASE("minimal config resolves a figure preset") {
    const RunConfig cfg = parse_config("pipeline = jsi\npreset = paper-fig2d\n");
    CHECK(cfg.pipeline == Pipeline::jsi);
    CHECK(cfg.preset == "paper-fig2d");
    CHECK(cfg.grid_n == 2048);
    CHECK(cfg.pump_wavelength == doctest::Approx(792e-9));
    CHECK(cfg.det_local.efficiency == doctest::Approx(0.70));
    REQUIRE(cfg.dt_minus_s.has_value());
    CHECK(*cfg.dt_minus_s == doctest::Approx(10e-12));

    const SynthesisConfig syn = cfg.make_synthesis();
    CHECK(syn.dt_h == doctest::Approx(5e-12));
    CHECK(syn.dt_v == doctest::Approx(-5e-12));
    CHECK(syn.dt_minus() == doctest::Approx(10e-12));  // the 100 GHz setting
}

TEST_CASE("explicit keys override the preset they reference") {
    const RunConfig cfg = parse_config(
        "pipeline = schmidt\n"
        "preset = paper-fig2d\n"
        "[grid]\n"
        "n = 512\n");
    CHECK(cfg.pipeline == Pipeline::schmidt);
    CHECK(cfg.grid_n == 512);
    REQUIRE(cfg.dt_minus_s.has_value());
    CHECK(*cfg.dt_minus_s == doctest::Approx(10e-12));
}

TEST_CASE("config diagnostics carry line numbers") {
    CHECK_THROWS_AS(parse_config(""), ConfigError);

    try {
        parse_config("pipeline = jsi\n[grid]\nwhatever = 3\n");
        FAIL("expected a diagnostic");
    } catch (const ConfigError& e) {
        CHECK(e.line == 3);
        CHECK(std::string(e.what()).find("whatever") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_config("pipeline = warp\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("pipeline = jsi\npreset = nope\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("pipeline = jsi\n[grid]\nn 12\n"), ConfigError);
}

TEST_CASE("delay precedence: direct values win, displacements warn") {
    const RunConfig cfg = parse_config(
        "pipeline = jsi\n"
        "[synthesis]\n"
        "dt_h_ps = 3\n"
        "dt_v_ps = -3\n"
        "d1_um = 100\n"
        "d2_um = -100\n");
    std::vector<std::string> warnings;
    const SynthesisConfig syn = cfg.make_synthesis(&warnings);
    CHECK(syn.dt_h == doctest::Approx(3e-12));
    CHECK(syn.dt_v == doctest::Approx(-3e-12));
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("ignored") != std::string::npos);
}

TEST_CASE("displacements map through the stage geometry") {
    const RunConfig cfg = parse_config(
        "pipeline = jsi\n"
        "[synthesis]\n"
        "d1_um = 100\n"
        "d2_um = -100\n"
        "d3_nm = 198\n");
    const SynthesisConfig syn = cfg.make_synthesis();
    CHECK(syn.dt_minus() == doctest::Approx(400e-6 / kSpeedOfLight));
    CHECK(syn.phase == doctest::Approx(std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("section presets expand hardware bundles") {
    const RunConfig cfg = parse_config(
        "pipeline = tof\n"
        "[detector]\n"
        "preset = snspd\n"
        "[dispersion]\n"
        "preset = dcf-15km\n");
    CHECK(cfg.det_local.efficiency == doctest::Approx(0.70));
    CHECK(cfg.det_local.jitter_sigma == doctest::Approx(80e-12 / kFwhmPerSigma));
    CHECK(cfg.det_local.dark_rate == doctest::Approx(100.0));
    CHECK(cfg.disp.d == doctest::Approx(-0.2685));
    CHECK(cfg.disp.lambda_ref == doctest::Approx(1565e-9));
}

TEST_CASE("serialization round-trips to an equal configuration") {
    const RunConfig a = parse_config(
        "pipeline = netsim\n"
        "preset = paper-fig5c\n"
        "seed = 777\n"
        "[clock_remote]\n"
        "drift = 1e-8\n"
        "referenced = false\n"
        "[synthesis]\n"
        "phase_rad = 1.25\n");
    const RunConfig b = parse_config(serialize(a));
    CHECK(a == b);
    CHECK(config_hash(a) == config_hash(b));
    CHECK(serialize(a) == serialize(b));
}

TEST_CASE("every figure preset exists") {
    for (const char* name :
         {"paper-fig2a", "paper-fig2b", "paper-fig2c", "paper-fig2d", "paper-fig2e",
          "paper-fig2f", "paper-fig2g", "paper-fig3a", "paper-fig3b", "paper-fig3c",
          "paper-fig3d", "paper-fig5a", "paper-fig5b", "paper-fig5c"}) {
        CHECK(preset_exists(name));
        CHECK_FALSE(preset_description(name).empty());
    }
}

TEST_CASE("values accept SI and scaled unit spellings") {
    const RunConfig a = parse_config(
        "pipeline = jsi\n[grid]\nspan_thz = 6\n[pump]\nfwhm_ghz = 15\n");
    CHECK(a.grid_span_hz == doctest::Approx(6e12));
    REQUIRE(a.pump_fwhm_hz.has_value());
    CHECK(*a.pump_fwhm_hz == doctest::Approx(15e9));

    const RunConfig b = parse_config(
        "pipeline = jsi\n[grid]\nspan_hz = 6e12\n[pump]\nfwhm_hz = 15e9\n");
    CHECK(b.grid_span_hz == a.grid_span_hz);
    CHECK(*b.pump_fwhm_hz == *a.pump_fwhm_hz);
}
