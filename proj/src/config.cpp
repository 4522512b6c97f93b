#include "freqbin/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "freqbin/constants.hpp"
#include "freqbin/errors.hpp"
#include "presets.hpp"

namespace freqbin {

namespace {

constexpr double kPsToS = 1e-12;
constexpr double kNsToS = 1e-9;

struct Entry {
    std::string section, key, value;
    int line = 0;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<Entry> tokenize(const std::string& text) {
    std::vector<Entry> entries;
    std::istringstream in(text);
    std::string raw, section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key = value", line_no);
        Entry e;
        e.section = section;
        e.key = trim(line.substr(0, eq));
        e.value = trim(line.substr(eq + 1));
        e.line = line_no;
        if (e.key.empty()) throw ConfigError("empty key", line_no);
        if (e.value.empty()) throw ConfigError("empty value for key '" + e.key + "'", line_no);
        entries.push_back(std::move(e));
    }
    return entries;
}

double parse_double(const Entry& e) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(e.value, &pos);
        if (pos != e.value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("cannot parse number '" + e.value + "' for key '" + e.key + "'", e.line);
    }
}

std::uint64_t parse_uint(const Entry& e) {
    const double v = parse_double(e);
    if (v < 0.0 || v != std::floor(v))
        throw ConfigError("key '" + e.key + "' needs a non-negative integer", e.line);
    return static_cast<std::uint64_t>(v);
}

bool parse_bool(const Entry& e) {
    if (e.value == "true" || e.value == "1" || e.value == "on") return true;
    if (e.value == "false" || e.value == "0" || e.value == "off") return false;
    throw ConfigError("key '" + e.key + "' needs true/false", e.line);
}

void apply_detector_entry(DetectorSpec& det, const Entry& e) {
    if (e.key == "preset") {
        const auto& table = presets::detector_presets();
        auto it = table.find(e.value);
        if (it == table.end()) throw ConfigError("unknown detector preset '" + e.value + "'", e.line);
        for (const auto& [k, v] : it->second)
            apply_detector_entry(det, Entry{e.section, k, v, e.line});
    } else if (e.key == "efficiency") {
        det.efficiency = parse_double(e);
        if (det.efficiency < 0.0 || det.efficiency > 1.0)
            throw ConfigError("efficiency must be in [0,1]", e.line);
    } else if (e.key == "jitter_sigma_ps") {
        det.jitter_sigma = parse_double(e) * kPsToS;
    } else if (e.key == "jitter_sigma_s") {
        det.jitter_sigma = parse_double(e);
    } else if (e.key == "jitter_fwhm_ps") {
        det.jitter_sigma = parse_double(e) * kPsToS / kFwhmPerSigma;
    } else if (e.key == "dark_rate_hz") {
        det.dark_rate = parse_double(e);
    } else if (e.key == "dead_time_ns") {
        det.dead_time = parse_double(e) * kNsToS;
    } else if (e.key == "dead_time_s") {
        det.dead_time = parse_double(e);
    } else {
        throw ConfigError("unknown key '" + e.key + "' in [" + e.section + "]", e.line);
    }
    if (det.jitter_sigma < 0.0) throw ConfigError("jitter must be non-negative", e.line);
}

void apply_clock_entry(ClockModel& c, const Entry& e) {
    if (e.key == "offset_ns")
        c.offset = parse_double(e) * kNsToS;
    else if (e.key == "offset_s")
        c.offset = parse_double(e);
    else if (e.key == "drift")
        c.drift = parse_double(e);
    else if (e.key == "sync_sigma_ps")
        c.sync_sigma = parse_double(e) * kPsToS;
    else if (e.key == "sync_sigma_s")
        c.sync_sigma = parse_double(e);
    else if (e.key == "referenced")
        c.referenced = parse_bool(e);
    else if (e.key == "random_walk")
        c.random_walk = parse_bool(e);
    else if (e.key == "rw_sigma_ps_per_sqrt_s")
        c.rw_sigma = parse_double(e) * kPsToS;
    else if (e.key == "rw_sigma_s_per_sqrt_s")
        c.rw_sigma = parse_double(e);
    else
        throw ConfigError("unknown key '" + e.key + "' in [" + e.section + "]", e.line);
}

void apply_entry(RunConfig& cfg, const Entry& e, bool& pipeline_set) {
    const std::string& s = e.section;
    const std::string& k = e.key;
    if (s.empty() || s == "run") {
        if (k == "pipeline") {
            cfg.pipeline = pipeline_from_name(e.value);
            pipeline_set = true;
        } else if (k == "preset") {
            // handled during expansion; retained for provenance
            cfg.preset = e.value;
        } else if (k == "seed") {
            cfg.seed = parse_uint(e);
        } else if (k == "out_dir") {
            cfg.out_dir = e.value;
        } else if (k == "duration_s") {
            cfg.duration = parse_double(e);
        } else {
            throw ConfigError("unknown key '" + k + "'", e.line);
        }
    } else if (s == "grid") {
        if (k == "n")
            cfg.grid_n = parse_uint(e);
        else if (k == "span_thz")
            cfg.grid_span_hz = parse_double(e) * 1e12;
        else if (k == "span_hz")
            cfg.grid_span_hz = parse_double(e);
        else if (k == "center_thz")
            cfg.grid_center_hz = parse_double(e) * 1e12;
        else if (k == "center_hz")
            cfg.grid_center_hz = parse_double(e);
        else
            throw ConfigError("unknown key '" + k + "' in [grid]", e.line);
    } else if (s == "pump") {
        if (k == "wavelength_nm")
            cfg.pump_wavelength = parse_double(e) * 1e-9;
        else if (k == "wavelength_m")
            cfg.pump_wavelength = parse_double(e);
        else if (k == "bandwidth_nm")
            cfg.pump_bandwidth_wl = parse_double(e) * 1e-9;
        else if (k == "bandwidth_m")
            cfg.pump_bandwidth_wl = parse_double(e);
        else if (k == "fwhm_ghz")
            cfg.pump_fwhm_hz = parse_double(e) * 1e9;
        else if (k == "fwhm_hz")
            cfg.pump_fwhm_hz = parse_double(e);
        else if (k == "shape") {
            if (e.value == "gaussian")
                cfg.pump_shape = PumpShape::gaussian;
            else if (e.value == "sech2")
                cfg.pump_shape = PumpShape::sech2;
            else if (e.value == "tabulated")
                cfg.pump_shape = PumpShape::tabulated;
            else
                throw ConfigError("unknown pump shape '" + e.value + "'", e.line);
        } else if (k == "table_csv")
            cfg.pump_table_csv = e.value;
        else
            throw ConfigError("unknown key '" + k + "' in [pump]", e.line);
    } else if (s == "crystal") {
        if (k == "length_mm")
            cfg.crystal_length = parse_double(e) * 1e-3;
        else if (k == "length_m")
            cfg.crystal_length = parse_double(e);
        else if (k == "poling_period_um")
            cfg.poling_period = parse_double(e) * 1e-6;
        else if (k == "poling_period_m")
            cfg.poling_period = parse_double(e);
        else if (k == "model") {
            if (e.value == "linearized")
                cfg.tabulated_model = false;
            else if (e.value == "tabulated")
                cfg.tabulated_model = true;
            else
                throw ConfigError("unknown phase-match model '" + e.value + "'", e.line);
        } else if (k == "dispersion_csv")
            cfg.dispersion_csv = e.value;
        else if (k == "dk0_rad_per_m")
            cfg.dk0 = parse_double(e);
        else if (k == "beta_h_ps_per_m")
            cfg.beta_h = parse_double(e) * kPsToS;
        else if (k == "beta_h_s_per_m")
            cfg.beta_h = parse_double(e);
        else if (k == "beta_v_ps_per_m")
            cfg.beta_v = parse_double(e) * kPsToS;
        else if (k == "beta_v_s_per_m")
            cfg.beta_v = parse_double(e);
        else if (k == "temperature_c")
            cfg.temperature_c = parse_double(e);
        else
            throw ConfigError("unknown key '" + k + "' in [crystal]", e.line);
    } else if (s == "synthesis") {
        if (k == "dt_h_ps")
            cfg.dt_h_s = parse_double(e) * kPsToS;
        else if (k == "dt_h_s")
            cfg.dt_h_s = parse_double(e);
        else if (k == "dt_v_ps")
            cfg.dt_v_s = parse_double(e) * kPsToS;
        else if (k == "dt_v_s")
            cfg.dt_v_s = parse_double(e);
        else if (k == "dt_minus_ps")
            cfg.dt_minus_s = parse_double(e) * kPsToS;
        else if (k == "dt_minus_s")
            cfg.dt_minus_s = parse_double(e);
        else if (k == "d1_um")
            cfg.d1_m = parse_double(e) * 1e-6;
        else if (k == "d1_m")
            cfg.d1_m = parse_double(e);
        else if (k == "d2_um")
            cfg.d2_m = parse_double(e) * 1e-6;
        else if (k == "d2_m")
            cfg.d2_m = parse_double(e);
        else if (k == "d3_nm")
            cfg.d3_m = parse_double(e) * 1e-9;
        else if (k == "d3_m")
            cfg.d3_m = parse_double(e);
        else if (k == "phase_rad")
            cfg.phase_rad = parse_double(e);
        else
            throw ConfigError("unknown key '" + k + "' in [synthesis]", e.line);
    } else if (s == "detector") {
        apply_detector_entry(cfg.det_local, e);
    } else if (s == "remote_detector") {
        apply_detector_entry(cfg.det_remote, e);
    } else if (s == "dispersion") {
        if (k == "preset") {
            const auto& table = presets::dispersion_presets();
            auto it = table.find(e.value);
            if (it == table.end())
                throw ConfigError("unknown dispersion preset '" + e.value + "'", e.line);
            for (const auto& [kk, vv] : it->second)
                apply_entry(cfg, Entry{s, kk, vv, e.line}, pipeline_set);
        } else if (k == "d_ps_per_nm")
            cfg.disp.d = parse_double(e) * kPsToS / 1e-9;
        else if (k == "d_s_per_m")
            cfg.disp.d = parse_double(e);
        else if (k == "lambda_ref_nm")
            cfg.disp.lambda_ref = parse_double(e) * 1e-9;
        else if (k == "lambda_ref_m")
            cfg.disp.lambda_ref = parse_double(e);
        else if (k == "base_delay_ns")
            cfg.disp.base_delay = parse_double(e) * kNsToS;
        else if (k == "base_delay_s")
            cfg.disp.base_delay = parse_double(e);
        else if (k == "band_halfwidth_nm")
            cfg.disp.band_halfwidth = parse_double(e) * 1e-9;
        else if (k == "band_halfwidth_m")
            cfg.disp.band_halfwidth = parse_double(e);
        else
            throw ConfigError("unknown key '" + k + "' in [dispersion]", e.line);
    } else if (s == "source") {
        if (k == "pair_rate_hz")
            cfg.pair_rate = parse_double(e);
        else if (k == "rep_rate_hz")
            cfg.rep_rate = parse_double(e);
        else
            throw ConfigError("unknown key '" + k + "' in [source]", e.line);
    } else if (s == "link") {
        if (k == "length_m")
            cfg.link.length = parse_double(e);
        else if (k == "group_index")
            cfg.link.group_index = parse_double(e);
        else if (k == "dispersion_ps_nm_km")
            cfg.link.dispersion_ps_nm_km = parse_double(e);
        else if (k == "lambda_ref_nm")
            cfg.link.lambda_ref = parse_double(e) * 1e-9;
        else if (k == "lambda_ref_m")
            cfg.link.lambda_ref = parse_double(e);
        else if (k == "loss_db")
            cfg.link.loss_db = parse_double(e);
        else
            throw ConfigError("unknown key '" + k + "' in [link]", e.line);
    } else if (s == "clock_local") {
        apply_clock_entry(cfg.clock_local, e);
    } else if (s == "clock_remote") {
        apply_clock_entry(cfg.clock_remote, e);
    } else if (s == "fold") {
        if (k == "bin_ps")
            cfg.fold_bin = parse_double(e) * kPsToS;
        else if (k == "bin_s")
            cfg.fold_bin = parse_double(e);
        else if (k == "window_ns")
            cfg.fold_window = parse_double(e) * kNsToS;
        else if (k == "window_s")
            cfg.fold_window = parse_double(e);
        else
            throw ConfigError("unknown key '" + k + "' in [fold]", e.line);
    } else if (s == "hom") {
        if (k == "tau_span_ps")
            cfg.hom_tau_span = parse_double(e) * kPsToS;
        else if (k == "tau_span_s")
            cfg.hom_tau_span = parse_double(e);
        else if (k == "n_points")
            cfg.hom_points = parse_uint(e);
        else
            throw ConfigError("unknown key '" + k + "' in [hom]", e.line);
    } else if (s == "tof") {
        if (k == "pairs")
            cfg.tof_pairs = parse_uint(e);
        else if (k == "window_ns")
            cfg.tof_window = parse_double(e) * kNsToS;
        else if (k == "window_s")
            cfg.tof_window = parse_double(e);
        else if (k == "recon_n")
            cfg.tof_recon_n = parse_uint(e);
        else
            throw ConfigError("unknown key '" + k + "' in [tof]", e.line);
    } else if (s == "schmidt") {
        if (k == "max_n")
            cfg.schmidt_max_n = parse_uint(e);
        else if (k == "bin_window_ghz")
            cfg.bin_window_hz = parse_double(e) * 1e9;
        else if (k == "bin_window_hz")
            cfg.bin_window_hz = parse_double(e);
        else
            throw ConfigError("unknown key '" + k + "' in [schmidt]", e.line);
    } else if (s == "output") {
        if (k == "csv_max_n")
            cfg.csv_max_n = parse_uint(e);
        else
            throw ConfigError("unknown key '" + k + "' in [output]", e.line);
    } else {
        throw ConfigError("unknown section [" + s + "]", e.line);
    }
}

}  // namespace

const char* pipeline_name(Pipeline p) {
    switch (p) {
        case Pipeline::jsi: return "jsi";
        case Pipeline::jta: return "jta";
        case Pipeline::schmidt: return "schmidt";
        case Pipeline::hom: return "hom";
        case Pipeline::tof: return "tof";
        case Pipeline::netsim: return "netsim";
    }
    return "?";
}

Pipeline pipeline_from_name(const std::string& name) {
    if (name == "jsi") return Pipeline::jsi;
    if (name == "jta") return Pipeline::jta;
    if (name == "schmidt") return Pipeline::schmidt;
    if (name == "hom") return Pipeline::hom;
    if (name == "tof") return Pipeline::tof;
    if (name == "netsim") return Pipeline::netsim;
    throw ConfigError("unknown pipeline '" + name + "'");
}

RunConfig parse_config(const std::string& text) {
    const auto file_entries = tokenize(text);

    // run-level preset expands first; explicit keys override it
    std::string preset_name;
    for (const auto& e : file_entries)
        if ((e.section.empty() || e.section == "run") && e.key == "preset") preset_name = e.value;

    std::vector<Entry> entries;
    if (!preset_name.empty()) {
        const auto& table = presets::run_presets();
        auto it = table.find(preset_name);
        if (it == table.end()) throw ConfigError("unknown preset '" + preset_name + "'");
        for (const auto& l : it->second.lines) entries.push_back({l.section, l.key, l.value, 0});
    }
    entries.insert(entries.end(), file_entries.begin(), file_entries.end());

    RunConfig cfg;
    cfg.preset = preset_name;
    bool pipeline_set = false;
    for (const auto& e : entries) apply_entry(cfg, e, pipeline_set);
    if (!pipeline_set) throw ConfigError("missing pipeline");
    return cfg;
}

PumpSpectrum RunConfig::make_pump() const {
    PumpSpectrum p;
    if (pump_fwhm_hz) {
        p.omega_p0 = omega_from_wavelength(pump_wavelength);
        p.fwhm = *pump_fwhm_hz;
        p.shape = pump_shape;
    } else {
        p = make_pump_from_wavelength(pump_wavelength, pump_bandwidth_wl, pump_shape);
    }
    if (pump_shape == PumpShape::tabulated) {
        std::ifstream in(pump_table_csv);
        if (!in) throw InvalidInput("cannot open pump table: " + pump_table_csv);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#' || line.find("omega_hz") != std::string::npos)
                continue;
            const auto comma = line.find(',');
            if (comma == std::string::npos) throw InvalidInput("pump table needs 2 columns");
            p.table_omega.push_back(std::stod(line.substr(0, comma)) * kTwoPi);
            p.table_amp.push_back(std::stod(line.substr(comma + 1)));
        }
        if (p.table_omega.size() < 2) throw InvalidInput("pump table too short");
        const double peak = *std::max_element(p.table_amp.begin(), p.table_amp.end());
        if (!(peak > 0.0)) throw InvalidInput("pump table has no positive entries");
        for (auto& a : p.table_amp) a /= peak;
    }
    return p;
}

FrequencyGrid RunConfig::make_grid() const { return make_grid_n(grid_n); }

FrequencyGrid RunConfig::make_grid_n(std::size_t n) const {
    const double center =
        grid_center_hz ? kTwoPi * *grid_center_hz : omega_from_wavelength(pump_wavelength) / 2.0;
    return build_frequency_grid(center, kTwoPi * grid_span_hz, n);
}

CrystalSpec RunConfig::make_crystal() const {
    CrystalSpec c;
    c.length = crystal_length;
    c.poling_period = poling_period;
    if (tabulated_model) {
        c.model.kind = PhaseMatchModel::Kind::tabulated;
        c.model.table = load_dispersion_csv(dispersion_csv);
    } else {
        c.model.kind = PhaseMatchModel::Kind::linearized;
        c.model.dk0 = dk0;
        c.model.beta_h = beta_h;
        c.model.beta_v = beta_v;
        c.model.omega_ref = omega_from_wavelength(pump_wavelength) / 2.0;
    }
    return c;
}

SynthesisConfig RunConfig::make_synthesis(std::vector<std::string>* warn) const {
    SynthesisConfig syn;
    syn.lambda_p = pump_wavelength;
    const bool have_direct = dt_h_s.has_value() || dt_v_s.has_value();
    const bool have_minus = dt_minus_s.has_value();
    const bool have_disp = d1_m.has_value() || d2_m.has_value();
    if (have_direct) {
        syn.dt_h = dt_h_s.value_or(0.0);
        syn.dt_v = dt_v_s.value_or(0.0);
        if ((have_minus || have_disp) && warn)
            warn->push_back("direct dt_h/dt_v given; other delay specifications ignored");
    } else if (have_minus) {
        syn.dt_h = *dt_minus_s / 2.0;
        syn.dt_v = -*dt_minus_s / 2.0;
        if (have_disp && warn)
            warn->push_back("dt_minus given; mirror displacements d1/d2 ignored");
    } else if (have_disp) {
        StageGeometry g;
        g.d1 = d1_m.value_or(0.0);
        g.d2 = d2_m.value_or(0.0);
        const Delays d = displacement_to_delays(g, kSpeedOfLight);
        syn.dt_h = d.dt_h;
        syn.dt_v = d.dt_v;
    }
    if (phase_rad) {
        syn.phase = *phase_rad;
        if (d3_m && warn) warn->push_back("explicit phase_rad given; d3 path ignored");
    } else if (d3_m) {
        StageGeometry g;
        g.d3 = *d3_m;
        syn.phase = phase_from_path(g, pump_wavelength);
    }
    return validate_synthesis(syn, rep_rate);
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void emit(std::ostringstream& out, const char* key, const std::string& v) {
    out << key << " = " << v << '\n';
}
void emit(std::ostringstream& out, const char* key, double v) { emit(out, key, fmt(v)); }
void emit(std::ostringstream& out, const char* key, std::uint64_t v) {
    emit(out, key, std::to_string(v));
}
void emit(std::ostringstream& out, const char* key, bool v) {
    emit(out, key, std::string(v ? "true" : "false"));
}

void emit_detector(std::ostringstream& out, const char* section, const DetectorSpec& d) {
    out << '[' << section << "]\n";
    emit(out, "efficiency", d.efficiency);
    emit(out, "jitter_sigma_s", d.jitter_sigma);
    emit(out, "dark_rate_hz", d.dark_rate);
    emit(out, "dead_time_s", d.dead_time);
}

void emit_clock(std::ostringstream& out, const char* section, const ClockModel& c) {
    out << '[' << section << "]\n";
    emit(out, "offset_s", c.offset);
    emit(out, "drift", c.drift);
    emit(out, "sync_sigma_s", c.sync_sigma);
    emit(out, "referenced", c.referenced);
    emit(out, "random_walk", c.random_walk);
    emit(out, "rw_sigma_s_per_sqrt_s", c.rw_sigma);
}

}  // namespace

std::string serialize(const RunConfig& cfg) {
    std::ostringstream out;
    emit(out, "pipeline", std::string(pipeline_name(cfg.pipeline)));
    if (!cfg.preset.empty()) emit(out, "preset", cfg.preset);
    emit(out, "seed", cfg.seed);
    emit(out, "out_dir", cfg.out_dir);
    emit(out, "duration_s", cfg.duration);

    out << "[grid]\n";
    emit(out, "n", static_cast<std::uint64_t>(cfg.grid_n));
    emit(out, "span_hz", cfg.grid_span_hz);
    if (cfg.grid_center_hz) emit(out, "center_hz", *cfg.grid_center_hz);

    out << "[pump]\n";
    emit(out, "wavelength_m", cfg.pump_wavelength);
    emit(out, "bandwidth_m", cfg.pump_bandwidth_wl);
    if (cfg.pump_fwhm_hz) emit(out, "fwhm_hz", *cfg.pump_fwhm_hz);
    emit(out, "shape",
         std::string(cfg.pump_shape == PumpShape::gaussian  ? "gaussian"
                     : cfg.pump_shape == PumpShape::sech2 ? "sech2"
                                                            : "tabulated"));
    if (!cfg.pump_table_csv.empty()) emit(out, "table_csv", cfg.pump_table_csv);

    out << "[crystal]\n";
    emit(out, "length_m", cfg.crystal_length);
    emit(out, "poling_period_m", cfg.poling_period);
    emit(out, "model", std::string(cfg.tabulated_model ? "tabulated" : "linearized"));
    if (!cfg.dispersion_csv.empty()) emit(out, "dispersion_csv", cfg.dispersion_csv);
    emit(out, "dk0_rad_per_m", cfg.dk0);
    emit(out, "beta_h_s_per_m", cfg.beta_h);
    emit(out, "beta_v_s_per_m", cfg.beta_v);
    emit(out, "temperature_c", cfg.temperature_c);

    out << "[synthesis]\n";
    if (cfg.dt_h_s) emit(out, "dt_h_s", *cfg.dt_h_s);
    if (cfg.dt_v_s) emit(out, "dt_v_s", *cfg.dt_v_s);
    if (cfg.dt_minus_s) emit(out, "dt_minus_s", *cfg.dt_minus_s);
    if (cfg.d1_m) emit(out, "d1_m", *cfg.d1_m);
    if (cfg.d2_m) emit(out, "d2_m", *cfg.d2_m);
    if (cfg.d3_m) emit(out, "d3_m", *cfg.d3_m);
    if (cfg.phase_rad) emit(out, "phase_rad", *cfg.phase_rad);

    emit_detector(out, "detector", cfg.det_local);
    emit_detector(out, "remote_detector", cfg.det_remote);

    out << "[dispersion]\n";
    emit(out, "d_s_per_m", cfg.disp.d);
    emit(out, "lambda_ref_m", cfg.disp.lambda_ref);
    emit(out, "base_delay_s", cfg.disp.base_delay);
    emit(out, "band_halfwidth_m", cfg.disp.band_halfwidth);

    out << "[source]\n";
    emit(out, "pair_rate_hz", cfg.pair_rate);
    emit(out, "rep_rate_hz", cfg.rep_rate);

    out << "[link]\n";
    emit(out, "length_m", cfg.link.length);
    emit(out, "group_index", cfg.link.group_index);
    emit(out, "dispersion_ps_nm_km", cfg.link.dispersion_ps_nm_km);
    emit(out, "lambda_ref_m", cfg.link.lambda_ref);
    emit(out, "loss_db", cfg.link.loss_db);

    emit_clock(out, "clock_local", cfg.clock_local);
    emit_clock(out, "clock_remote", cfg.clock_remote);

    out << "[fold]\n";
    emit(out, "bin_s", cfg.fold_bin);
    emit(out, "window_s", cfg.fold_window);

    out << "[hom]\n";
    if (cfg.hom_tau_span) emit(out, "tau_span_s", *cfg.hom_tau_span);
    emit(out, "n_points", static_cast<std::uint64_t>(cfg.hom_points));

    out << "[tof]\n";
    emit(out, "pairs", cfg.tof_pairs);
    emit(out, "window_s", cfg.tof_window);
    emit(out, "recon_n", static_cast<std::uint64_t>(cfg.tof_recon_n));

    out << "[schmidt]\n";
    emit(out, "max_n", static_cast<std::uint64_t>(cfg.schmidt_max_n));
    if (cfg.bin_window_hz) emit(out, "bin_window_hz", *cfg.bin_window_hz);

    out << "[output]\n";
    emit(out, "csv_max_n", static_cast<std::uint64_t>(cfg.csv_max_n));
    return out.str();
}

std::uint64_t config_hash(const RunConfig& cfg) {
    const std::string s = serialize(cfg);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

bool operator==(const RunConfig& a, const RunConfig& b) { return serialize(a) == serialize(b); }

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& [name, p] : presets::run_presets()) names.push_back(name);
    return names;
}

bool preset_exists(const std::string& name) { return presets::run_presets().count(name) > 0; }

std::string preset_description(const std::string& name) {
    auto it = presets::run_presets().find(name);
    return it == presets::run_presets().end() ? std::string() : it->second.description;
}

}  // namespace freqbin
