#include "freqbin/pipelines.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <filesystem>

#include "freqbin/analysis.hpp"
#include "freqbin/constants.hpp"
#include "freqbin/errors.hpp"
#include "freqbin/hom.hpp"
#include "freqbin/io.hpp"
#include "freqbin/kernels.hpp"

namespace freqbin {

namespace {

namespace fs = std::filesystem;

struct Run {
    const RunConfig& cfg;
    fs::path dir;
    Manifest man;

    explicit Run(const RunConfig& cfg_) : cfg(cfg_), dir(cfg_.out_dir) {
        fs::create_directories(dir);
        man.pipeline = pipeline_name(cfg.pipeline);
        man.preset = cfg.preset;
        man.seed = cfg.seed;
        char buf[32];
        std::snprintf(buf, sizeof buf, "%016" PRIx64, config_hash(cfg));
        man.config_hash = buf;
        man.warnings = cfg.warnings;
    }

    std::string path(const std::string& name) {
        man.outputs.push_back(name);
        return (dir / name).string();
    }
};

std::vector<double> axis_hz(const std::vector<double>& omega) {
    std::vector<double> hz(omega.size());
    for (std::size_t i = 0; i < omega.size(); ++i) hz[i] = omega[i] / kTwoPi;
    return hz;
}

// block-sum downsample so large grids stay reviewable as CSV
RealMatrix downsample(const RealMatrix& m, std::size_t max_n, std::vector<double>& axis_a,
                      std::vector<double>& axis_b) {
    const auto rows = static_cast<std::size_t>(m.rows());
    const auto cols = static_cast<std::size_t>(m.cols());
    const std::size_t block = std::max<std::size_t>(1, (std::max(rows, cols) + max_n - 1) / max_n);
    if (block == 1) return m;
    const std::size_t nr = (rows + block - 1) / block, nc = (cols + block - 1) / block;
    RealMatrix out = RealMatrix::Zero(nr, nc);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) out(i / block, j / block) += m(i, j);
    std::vector<double> aa(nr), ab(nc);
    for (std::size_t i = 0; i < nr; ++i)
        aa[i] = axis_a[std::min(rows - 1, i * block + block / 2)];
    for (std::size_t j = 0; j < nc; ++j)
        ab[j] = axis_b[std::min(cols - 1, j * block + block / 2)];
    axis_a = aa;
    axis_b = ab;
    return out;
}

struct State {
    FrequencyGrid grid;
    PumpSpectrum pump;
    CrystalSpec crystal;
    SynthesisConfig syn;
    JointAmplitude baseline;
    JointAmplitude synthesized;
};

State build_state(const RunConfig& cfg, std::vector<std::string>* warnings,
                  std::size_t n_override = 0) {
    State st;
    st.grid = n_override ? cfg.make_grid_n(n_override) : cfg.make_grid();
    st.pump = cfg.make_pump();
    st.crystal = cfg.make_crystal();
    st.syn = cfg.make_synthesis(warnings);
    st.baseline = build_jsa(st.grid, st.pump, st.crystal, true);
    st.synthesized = apply_bidirectional(st.baseline, st.syn);
    return st;
}

nlohmann::json try_bin_report(const std::vector<double>& profile, const std::vector<double>& axis,
                              double threshold_db) {
    try {
        return to_json(detect_bins(profile, axis, threshold_db));
    } catch (const Error& e) {
        nlohmann::json j;
        j["error"] = e.what();
        return j;
    }
}

void run_jsi(Run& run) {
    State st = build_state(run.cfg, &run.man.warnings);
    const RealMatrix jsi = jsi_from_amplitude(st.synthesized);
    auto [m_a, m_b] = marginals(jsi, st.grid);
    const DifferenceProfile diff = difference_profile(jsi, st.grid);

    const auto ax_a = axis_hz(st.grid.omega_a);
    const auto ax_b = axis_hz(st.grid.omega_b);
    write_columns_csv(run.path("marginal_a.csv"), {"nu_a_hz", "intensity"}, {&ax_a, &m_a});
    write_columns_csv(run.path("marginal_b.csv"), {"nu_b_hz", "intensity"}, {&ax_b, &m_b});
    write_columns_csv(run.path("difference_profile.csv"), {"nu_diff_hz", "intensity"},
                      {&diff.axis_hz, &diff.value});

    std::vector<double> da = ax_a, db = ax_b;
    const RealMatrix small = downsample(jsi, run.cfg.csv_max_n, da, db);
    write_matrix_csv(run.path("jsi.csv"), small, da, db);

    const auto marg_report = try_bin_report(m_a, ax_a, -10.0);
    const auto diff_report = try_bin_report(diff.value, diff.axis_hz, -10.0);
    write_json(run.path("bins_marginal.json"), marg_report);
    write_json(run.path("bins_difference.json"), diff_report);

    run.man.metrics["total_intensity"] = st.synthesized.total_intensity();
    run.man.metrics["dt_minus_s"] = st.syn.dt_minus();
    run.man.metrics["phase_rad"] = st.syn.phase;
    if (diff_report.contains("spacing_hz") && !diff_report.value("single_peak", true))
        run.man.metrics["bin_spacing_hz"] = diff_report["spacing_hz"].get<double>() / 2.0;
    if (marg_report.contains("spacing_hz") && !marg_report.value("single_peak", true))
        run.man.metrics["marginal_spacing_hz"] = marg_report["spacing_hz"];
}

void run_jta(Run& run) {
    State st = build_state(run.cfg, &run.man.warnings, std::min<std::size_t>(run.cfg.grid_n, 1024));
    const JointTemporalAmplitude jta = jta_transform_to_time(st.synthesized);

    RealMatrix jti(jta.values.rows(), jta.values.cols());
    kernels::abs2(jta.values.data(), jti.data(), static_cast<std::size_t>(jta.values.size()));

    // collapse onto the time-difference axis: ridge positions and separation
    const std::size_t n = jta.t_a.size();
    const double dt = jta.t_a[1] - jta.t_a[0];
    std::vector<double> prof(2 * n - 1, 0.0), axis(2 * n - 1);
    for (std::size_t d = 0; d < 2 * n - 1; ++d)
        axis[d] = (static_cast<double>(d) - static_cast<double>(n - 1)) * dt;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            prof[(n - 1) + i - j] += jti(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));

    write_columns_csv(run.path("time_difference_profile.csv"), {"t_diff_s", "intensity"},
                      {&axis, &prof});
    std::vector<double> ta = jta.t_a, tb = jta.t_b;
    const RealMatrix small = downsample(jti, run.cfg.csv_max_n, ta, tb);
    write_matrix_csv(run.path("jti.csv"), small, ta, tb);

    // two tallest well-separated ridge peaks
    const std::size_t guard = std::max<std::size_t>(2, static_cast<std::size_t>(0.3e-12 / dt));
    std::size_t p1 = std::max_element(prof.begin(), prof.end()) - prof.begin();
    double best2 = -1.0;
    std::size_t p2 = p1;
    for (std::size_t i = 1; i + 1 < prof.size(); ++i) {
        if (i + guard > p1 && p1 + guard > i) continue;
        if (prof[i] > best2 && prof[i] >= prof[i - 1] && prof[i] >= prof[i + 1]) {
            best2 = prof[i];
            p2 = i;
        }
    }
    run.man.metrics["ridge_separation_s"] = std::abs(axis[p1] - axis[p2]);
    run.man.metrics["dt_minus_s"] = st.syn.dt_minus();

    // energy conservation across the transform
    const double e_freq = st.synthesized.total_intensity();
    const double e_time =
        kernels::sum_abs2(jta.values.data(), static_cast<std::size_t>(jta.values.size())) * dt * dt;
    run.man.metrics["parseval_relative_error"] = std::abs(e_time - e_freq) / e_freq;
}

void run_schmidt(Run& run) {
    State st = build_state(run.cfg, &run.man.warnings, std::min(run.cfg.grid_n, run.cfg.schmidt_max_n));
    JointAmplitude f = st.synthesized;
    normalize(f);
    const SchmidtResult full = schmidt_decompose(f);
    auto j = to_json(full);
    // trim the long tail of negligible coefficients in the artifact
    if (full.coefficients.size() > 64)
        j["coefficients"] =
            std::vector<double>(full.coefficients.begin(), full.coefficients.begin() + 64);
    write_json(run.path("schmidt_full.json"), j);
    run.man.metrics["schmidt_number"] = full.schmidt_number;
    run.man.metrics["dimension_proxy"] = full.schmidt_number * full.schmidt_number;

    const double dt_minus = std::abs(st.syn.dt_minus());
    if (dt_minus > 0.0) {
        const double spacing = 1.0 / dt_minus;
        const double window = run.cfg.bin_window_hz.value_or(spacing);
        // intra-bin structure needs a fine dedicated grid around one bin
        RunConfig fine = run.cfg;
        fine.grid_span_hz = 6.0 * spacing;
        State stf = build_state(fine, nullptr, 512);
        const RealMatrix jsi = jsi_from_amplitude(stf.synthesized);
        const double center_hz = stf.grid.omega_center / kTwoPi;
        JointAmplitude bin = extract_bin(jsi, stf.grid, center_hz, window);
        const SchmidtResult intra = schmidt_decompose(bin);
        write_json(run.path("schmidt_bin.json"), to_json(intra));
        run.man.metrics["bin_spacing_hz"] = spacing;
        run.man.metrics["bin_schmidt_number"] = intra.schmidt_number;
        run.man.metrics["bin_purity"] = intra.purity;
    }
}

void run_hom(Run& run) {
    State st = build_state(run.cfg, &run.man.warnings, std::min<std::size_t>(run.cfg.grid_n, 1024));
    // the compensation interferometer removes the mean per-arm delay, which
    // centers the cross-pass fringe at tau = 0
    JointAmplitude f = delay_shift(st.synthesized, -st.syn.dt_h / 2.0, -st.syn.dt_v / 2.0);
    normalize(f);

    const double dt_minus = std::abs(st.syn.dt_minus());
    const double span = run.cfg.hom_tau_span.value_or(dt_minus > 0.0 ? 3.0 * dt_minus : 8e-12);
    std::size_t n_points = run.cfg.hom_points | 1;  // odd, so tau = 0 is sampled
    const HomCurve curve = hom_curve(f, span, n_points);

    write_columns_csv(run.path("hom_curve.csv"), {"tau_s", "coincidence_probability"},
                      {&curve.tau, &curve.p});
    nlohmann::json metrics;
    try {
        const FringeMetrics fm = fringe_metrics(curve);
        metrics = to_json(fm);
        run.man.metrics["fringe_period_s"] = fm.period;
        run.man.metrics["visibility"] = fm.visibility;
        run.man.metrics["central_extremum"] =
            fm.central == CentralExtremum::dip ? "dip" : "peak";
    } catch (const Error& e) {
        metrics["error"] = e.what();
    }
    write_json(run.path("hom_metrics.json"), metrics);
    run.man.metrics["dt_minus_s"] = st.syn.dt_minus();
}

void run_tof(Run& run) {
    State st = build_state(run.cfg, &run.man.warnings, std::min<std::size_t>(run.cfg.grid_n, 512));
    JointAmplitude f = st.synthesized;
    normalize(f);

    PairSource src;
    src.jsi = jsi_from_amplitude(f);
    src.grid = st.grid;
    src.pair_rate = run.cfg.pair_rate;
    src.rep_rate = run.cfg.rep_rate;

    const double duration = static_cast<double>(run.cfg.tof_pairs) / src.pair_rate;
    std::mt19937_64 rng_pairs(derive_seed(run.cfg.seed, 0));
    std::mt19937_64 rng_a(derive_seed(run.cfg.seed, 1));
    std::mt19937_64 rng_b(derive_seed(run.cfg.seed, 2));
    const auto pairs = sample_pair_events(src, duration, rng_pairs);
    const auto ev_a = apply_detector(arm_view(pairs, Channel::signal), run.cfg.det_local,
                                     run.cfg.disp, 0, Channel::signal, duration, rng_a);
    const auto ev_b = apply_detector(arm_view(pairs, Channel::idler), run.cfg.det_local,
                                     run.cfg.disp, 0, Channel::idler, duration, rng_b);

    std::vector<double> sync;
    const double period = 1.0 / run.cfg.rep_rate;
    for (int k = 0; k < 16; ++k) sync.push_back(k * period);

    const FrequencyGrid recon_grid =
        build_frequency_grid(st.grid.omega_center, kTwoPi * run.cfg.grid_span_hz,
                             run.cfg.tof_recon_n);
    const RealMatrix recon = tof_reconstruct(event_times(ev_a), event_times(ev_b), sync,
                                             run.cfg.disp, recon_grid, run.cfg.tof_window);

    // analytic truth on the same grid for the fidelity metric
    State truth = build_state(run.cfg, nullptr, run.cfg.tof_recon_n);
    RealMatrix truth_jsi = jsi_from_amplitude(truth.synthesized);

    const double corr = [&] {
        const auto n = static_cast<std::size_t>(recon.size());
        const double ma = recon.mean(), mb = truth_jsi.mean();
        double sab = 0, saa = 0, sbb = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double a = recon.data()[i] - ma, b = truth_jsi.data()[i] - mb;
            sab += a * b;
            saa += a * a;
            sbb += b * b;
        }
        return sab / std::sqrt(saa * sbb);
    }();

    const DifferenceProfile diff = difference_profile(recon, recon_grid);
    const double dt_minus = std::abs(st.syn.dt_minus());
    double contrast = 1.0;
    if (dt_minus > 0.0) {
        const double x_period_hz = 2.0 / dt_minus;  // modulation period on the difference axis
        const double step = diff.axis_hz[1] - diff.axis_hz[0];
        contrast = modulation_contrast(diff.value, step, x_period_hz);
    }

    auto ra = axis_hz(recon_grid.omega_a), rb = axis_hz(recon_grid.omega_b);
    write_matrix_csv(run.path("tof_reconstruction.csv"), recon, ra, rb);
    write_columns_csv(run.path("tof_difference_profile.csv"), {"nu_diff_hz", "counts"},
                      {&diff.axis_hz, &diff.value});
    write_events_binary(run.path("events_signal.bin"), ev_a);
    write_events_binary(run.path("events_idler.bin"), ev_b);

    run.man.metrics["pairs_drawn"] = pairs.size();
    run.man.metrics["coincidences_used"] = recon.sum();
    run.man.metrics["correlation_with_model"] = corr;
    run.man.metrics["difference_axis_valley_to_peak"] = contrast;
    run.man.metrics["resolution_estimate_m"] =
        resolution_estimate(run.cfg.disp, run.cfg.det_local.jitter_sigma * kFwhmPerSigma);
}

void run_netsim(Run& run) {
    State st = build_state(run.cfg, &run.man.warnings);
    JointAmplitude f = st.synthesized;
    normalize(f);

    TwoNodeScenario sc;
    sc.source.jsi = jsi_from_amplitude(f);
    sc.source.grid = st.grid;
    sc.source.pair_rate = run.cfg.pair_rate;
    sc.source.rep_rate = run.cfg.rep_rate;
    sc.local_det = run.cfg.det_local;
    sc.local_disp = run.cfg.disp;
    sc.remote_det = run.cfg.det_remote;
    sc.link = run.cfg.link;
    sc.clock_local = run.cfg.clock_local;
    sc.clock_remote = run.cfg.clock_remote;

    const auto [local, remote] = simulate_two_node(sc, run.cfg.duration, run.cfg.seed);

    FoldParams fp;
    fp.bin_width = run.cfg.fold_bin;
    fp.window = run.cfg.fold_window;
    fp.referenced = run.cfg.clock_local.referenced && run.cfg.clock_remote.referenced;
    const FoldedHistogram h = fold_and_histogram(local, remote, run.cfg.rep_rate, fp);

    std::vector<double> bin_start_ps(h.counts.size());
    for (std::size_t k = 0; k < h.counts.size(); ++k)
        bin_start_ps[k] = static_cast<double>(k) * h.bin_width * 1e12;
    write_columns_csv(run.path("folded_histogram.csv"), {"bin_start_ps", "counts"},
                      {&bin_start_ps, &h.counts});
    write_events_binary(run.path("events_node0.bin"), local);
    write_events_binary(run.path("events_node1.bin"), remote);

    const double lambda_deg = 2.0 * run.cfg.pump_wavelength;
    nlohmann::json report;
    try {
        const BinReport br = resolve_report(h, run.cfg.disp, lambda_deg);
        report = to_json(br);
        if (!br.single_peak) run.man.metrics["bin_spacing_hz"] = br.spacing_hz;
        run.man.metrics["bin_count"] = br.count;
    } catch (const Error& e) {
        report["error"] = e.what();
    }
    write_json(run.path("netsim_bins.json"), report);

    const auto stats =
        coincidences_and_klyshko(event_times(local), event_times(remote), run.cfg.fold_window);
    run.man.metrics["coincidences"] = stats.coincidences;
    run.man.metrics["singles_local"] = stats.singles_a;
    run.man.metrics["singles_remote"] = stats.singles_b;
    const double dt_minus = std::abs(st.syn.dt_minus());
    if (dt_minus > 0.0) {
        const double spacing_hz = 1.0 / dt_minus;
        const double slope =
            kSpeedOfLight / (lambda_deg * lambda_deg * std::abs(run.cfg.disp.d));
        run.man.metrics["fold_contrast"] = folded_modulation_contrast(h, spacing_hz / slope);
    }
}

}  // namespace

nlohmann::json Manifest::to_json() const {
    nlohmann::json j;
    j["schema"] = "freqbin-manifest-v1";
    j["pipeline"] = pipeline;
    j["preset"] = preset;
    j["seed"] = seed;
    j["config_hash"] = config_hash;
    j["outputs"] = outputs;
    j["metrics"] = metrics;
    j["warnings"] = warnings;
    return j;
}

Manifest run_pipeline(const RunConfig& cfg) {
    Run run(cfg);
    switch (cfg.pipeline) {
        case Pipeline::jsi: run_jsi(run); break;
        case Pipeline::jta: run_jta(run); break;
        case Pipeline::schmidt: run_schmidt(run); break;
        case Pipeline::hom: run_hom(run); break;
        case Pipeline::tof: run_tof(run); break;
        case Pipeline::netsim: run_netsim(run); break;
    }
    write_json((fs::path(cfg.out_dir) / "manifest.json").string(), run.man.to_json());
    run.man.outputs.push_back("manifest.json");
    return run.man;
}

}  // namespace freqbin
