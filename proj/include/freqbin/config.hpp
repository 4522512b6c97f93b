#ifndef FREQBIN_CONFIG_HPP
#define FREQBIN_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "freqbin/detection.hpp"
#include "freqbin/network.hpp"
#include "freqbin/spectral.hpp"
#include "freqbin/synthesis.hpp"

namespace freqbin {

enum class Pipeline { jsi, jta, schmidt, hom, tof, netsim };

const char* pipeline_name(Pipeline p);
Pipeline pipeline_from_name(const std::string& name);

// Fully resolved run description. Parsed from INI-style key=value text with
// presets expanded first and explicit keys overriding them; every value is
// stored in SI units.
struct RunConfig {
    Pipeline pipeline = Pipeline::jsi;
    std::string preset;
    std::uint64_t seed = 1;
    std::string out_dir = "out";

    // [grid]
    std::size_t grid_n = 2048;
    double grid_span_hz = 12e12;
    std::optional<double> grid_center_hz;  // default: half the pump frequency

    // [pump]
    double pump_wavelength = 792e-9;
    double pump_bandwidth_wl = 0.2e-9;      // meters of wavelength
    std::optional<double> pump_fwhm_hz;     // direct override
    PumpShape pump_shape = PumpShape::gaussian;
    std::string pump_table_csv;

    // [crystal]
    double crystal_length = 0.040;
    double poling_period = 21.5e-6;
    bool tabulated_model = false;
    std::string dispersion_csv;
    double dk0 = 0.0;
    double beta_h = 4.9e-12;
    double beta_v = -4.9e-12;
    double temperature_c = 42.0;  // metadata only; the model has no T dependence

    // [synthesis]
    std::optional<double> dt_h_s, dt_v_s, dt_minus_s;
    std::optional<double> d1_m, d2_m, d3_m;
    std::optional<double> phase_rad;

    // [detector] / [remote_detector]
    DetectorSpec det_local{0.7, 0.0, 0.0, 0.0};
    DetectorSpec det_remote{0.7, 0.0, 0.0, 0.0};

    // [dispersion]
    DispersionSpec disp{};

    // [source]
    double pair_rate = 0.196e6;
    double rep_rate = 76e6;

    // [link] / [clock_local] / [clock_remote] / [fold]
    FiberLink link{};
    ClockModel clock_local{};
    ClockModel clock_remote{};
    double fold_bin = 30e-12;
    double fold_window = 3e-9;

    // [run]
    double duration = 0.1;

    // [hom]
    std::optional<double> hom_tau_span;
    std::size_t hom_points = 1001;

    // [tof]
    std::uint64_t tof_pairs = 100000;
    double tof_window = 8e-9;
    std::size_t tof_recon_n = 128;

    // [schmidt]
    std::size_t schmidt_max_n = 1024;
    std::optional<double> bin_window_hz;

    // [output]
    std::size_t csv_max_n = 512;

    std::vector<std::string> warnings;

    PumpSpectrum make_pump() const;
    FrequencyGrid make_grid() const;
    FrequencyGrid make_grid_n(std::size_t n) const;
    CrystalSpec make_crystal() const;
    // Applies the precedence rules (direct delays win over displacements,
    // explicit phase wins over the d3 path) and validates against one pulse
    // period. Appends a warning when displacements are ignored.
    SynthesisConfig make_synthesis(std::vector<std::string>* warnings = nullptr) const;
};

RunConfig parse_config(const std::string& text);

// Canonical text form; parse(serialize(cfg)) resolves to an equal config.
std::string serialize(const RunConfig& cfg);

// FNV-1a of the canonical form.
std::uint64_t config_hash(const RunConfig& cfg);

bool operator==(const RunConfig& a, const RunConfig& b);

// Named parameter bundles. Run presets (paper-fig2a ... paper-fig5c) carry a
// pipeline plus every parameter of that measurement; section presets
// ([detector] preset=snspd, [dispersion] preset=dcf-50km, ...) expand inside
// their section.
std::vector<std::string> preset_names();
bool preset_exists(const std::string& name);
std::string preset_description(const std::string& name);

}  // namespace freqbin

#endif
