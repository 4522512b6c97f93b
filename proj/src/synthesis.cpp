#include "freqbin/synthesis.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>

#include "freqbin/constants.hpp"
#include "freqbin/errors.hpp"
#include "freqbin/kernels.hpp"

namespace freqbin {

namespace {

double wrap_two_pi(double phi) {
    phi = std::fmod(phi, kTwoPi);
    if (phi < 0.0) phi += kTwoPi;
    return phi;
}

// in-place unscaled 2D DFT; sign=+1 is the e^{+i w t} (FFTW_BACKWARD) kernel
void dft2(AmpMatrix& m, int sign) {
    auto* data = reinterpret_cast<fftw_complex*>(m.data());
    fftw_plan plan = fftw_plan_dft_2d(static_cast<int>(m.rows()), static_cast<int>(m.cols()),
                                      data, data, sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD,
                                      FFTW_ESTIMATE);
    if (!plan) throw Error("fftw plan creation failed");
    fftw_execute(plan);
    fftw_destroy_plan(plan);
}

std::vector<double> time_axis(std::size_t n, double dw) {
    const double dt = kTwoPi / (static_cast<double>(n) * dw);
    std::vector<double> t(n);
    for (std::size_t k = 0; k < n; ++k)
        t[k] = (static_cast<double>(k) - static_cast<double>(n / 2)) * dt;
    return t;
}

}  // namespace

Delays displacement_to_delays(const StageGeometry& g, double c_light) {
    Delays d;
    d.dt_h = StageGeometry::path_multiplier * g.d1 / c_light;
    d.dt_v = StageGeometry::path_multiplier * g.d2 / c_light;
    d.dt_minus = d.dt_h - d.dt_v;
    return d;
}

double phase_from_path(const StageGeometry& g, double lambda_p) {
    if (!(lambda_p > 0.0)) throw InvalidInput("pump wavelength must be positive");
    return wrap_two_pi(kTwoPi * StageGeometry::path_multiplier * g.d3 / lambda_p);
}

SynthesisConfig validate_synthesis(SynthesisConfig cfg, double rep_rate) {
    if (rep_rate > 0.0) {
        const double period = 1.0 / rep_rate;
        if (std::abs(cfg.dt_h) > period || std::abs(cfg.dt_v) > period)
            throw InvalidInput("synthesis delay exceeds one pump pulse period");
    }
    cfg.phase = wrap_two_pi(cfg.phase);
    return cfg;
}

JointAmplitude apply_bidirectional(const JointAmplitude& f, const SynthesisConfig& cfg) {
    validate_grid(f.grid);
    JointAmplitude out = f;
    const std::size_t na = f.grid.n_a, nb = f.grid.n_b;

    // factor(i,j) = 1 + [e^{i phi} e^{-i wa_i dt_h}] * e^{-i wb_j dt_v}
    std::vector<std::complex<double>> row_phase(na), col_phase(nb);
    for (std::size_t i = 0; i < na; ++i)
        row_phase[i] = std::polar(1.0, cfg.phase - f.grid.omega_a[i] * cfg.dt_h);
    for (std::size_t j = 0; j < nb; ++j)
        col_phase[j] = std::polar(1.0, -f.grid.omega_b[j] * cfg.dt_v);

    for (std::size_t i = 0; i < na; ++i)
        kernels::modulate_rank1(out.values.data() + i * nb, col_phase.data(), row_phase[i], nb);
    out.normalized = false;
    return out;
}

JointAmplitude delay_shift(const JointAmplitude& f, double tau_a, double tau_b) {
    JointAmplitude out = f;
    const std::size_t na = f.grid.n_a, nb = f.grid.n_b;
    std::vector<std::complex<double>> ra(na), rb(nb);
    for (std::size_t i = 0; i < na; ++i) ra[i] = std::polar(1.0, -f.grid.omega_a[i] * tau_a);
    for (std::size_t j = 0; j < nb; ++j) rb[j] = std::polar(1.0, -f.grid.omega_b[j] * tau_b);
    for (std::size_t i = 0; i < na; ++i) {
        auto* row = out.values.data() + i * nb;
        for (std::size_t j = 0; j < nb; ++j) row[j] *= ra[i] * rb[j];
    }
    return out;
}

RealMatrix jsi_from_amplitude(const JointAmplitude& f) {
    RealMatrix jsi(f.values.rows(), f.values.cols());
    kernels::abs2(f.values.data(), jsi.data(), static_cast<std::size_t>(f.values.size()));
    return jsi;
}

JointTemporalAmplitude jta_transform_to_time(const JointAmplitude& f) {
    validate_grid(f.grid);
    const std::size_t na = f.grid.n_a, nb = f.grid.n_b;
    const double dw = f.grid.step();

    JointTemporalAmplitude jta;
    jta.source_grid = f.grid;
    jta.t_a = time_axis(na, dw);
    jta.t_b = time_axis(nb, dw);
    jta.values = f.values;

    // e^{i w_j t_k} = e^{i w0 t_k} e^{i j dw t0} e^{2 pi i j k / n}: pre/post
    // ramps around an unscaled inverse DFT
    auto pre_ramp = [dw](const std::vector<double>& t, std::size_t n) {
        std::vector<std::complex<double>> r(n);
        for (std::size_t j = 0; j < n; ++j)
            r[j] = std::polar(1.0, static_cast<double>(j) * dw * t.front());
        return r;
    };
    const auto pre_a = pre_ramp(jta.t_a, na);
    const auto pre_b = pre_ramp(jta.t_b, nb);
    for (std::size_t i = 0; i < na; ++i) {
        auto* row = jta.values.data() + i * nb;
        for (std::size_t j = 0; j < nb; ++j) row[j] *= pre_a[i] * pre_b[j];
    }

    dft2(jta.values, +1);

    const double w0a = f.grid.omega_a.front(), w0b = f.grid.omega_b.front();
    const double scale = dw * dw / kTwoPi;
    for (std::size_t ka = 0; ka < na; ++ka) {
        const std::complex<double> pa = std::polar(scale, w0a * jta.t_a[ka]);
        auto* row = jta.values.data() + ka * nb;
        for (std::size_t kb = 0; kb < nb; ++kb)
            row[kb] *= pa * std::polar(1.0, w0b * jta.t_b[kb]);
    }
    return jta;
}

JointAmplitude jta_transform_to_frequency(const JointTemporalAmplitude& jta) {
    const FrequencyGrid& grid = jta.source_grid;
    validate_grid(grid);
    const std::size_t na = grid.n_a, nb = grid.n_b;
    const double dt_a = jta.t_a[1] - jta.t_a[0];
    const double dt_b = jta.t_b[1] - jta.t_b[0];

    JointAmplitude f;
    f.grid = grid;
    f.values = jta.values;

    // inverse kernel e^{-i w t}: conjugate ramps around an unscaled forward DFT
    for (std::size_t ka = 0; ka < na; ++ka) {
        const std::complex<double> pa =
            std::polar(1.0, -grid.omega_a.front() * jta.t_a[ka]);
        auto* row = f.values.data() + ka * nb;
        for (std::size_t kb = 0; kb < nb; ++kb)
            row[kb] *= pa * std::polar(1.0, -grid.omega_b.front() * jta.t_b[kb]);
    }

    dft2(f.values, -1);

    const double dw = grid.step();
    const double scale = dt_a * dt_b / kTwoPi;
    for (std::size_t i = 0; i < na; ++i) {
        const std::complex<double> pa =
            std::polar(scale, -static_cast<double>(i) * dw * jta.t_a.front());
        auto* row = f.values.data() + i * nb;
        for (std::size_t j = 0; j < nb; ++j)
            row[j] *= pa * std::polar(1.0, -static_cast<double>(j) * dw * jta.t_b.front());
    }
    return f;
}

}  // namespace freqbin
