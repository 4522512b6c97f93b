#include "freqbin/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "freqbin/constants.hpp"
#include "freqbin/errors.hpp"

namespace freqbin {

namespace {

// sech^2(x) = 1/2 at x = acosh(sqrt(2))
const double kSech2HalfArg = std::acosh(std::sqrt(2.0));

double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x,
              const char* what) {
    if (xs.empty() || x < xs.front() || x > xs.back())
        throw InvalidInput(std::string(what) + ": query outside tabulated range");
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    if (it == xs.begin()) return ys.front();
    if (it == xs.end()) return ys.back();
    const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
    const std::size_t lo = hi - 1;
    const double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
    return ys[lo] + t * (ys[hi] - ys[lo]);
}

}  // namespace

PumpSpectrum make_pump_from_wavelength(double lambda_p, double delta_lambda, PumpShape shape) {
    if (!(lambda_p > 0.0) || !(delta_lambda > 0.0))
        throw InvalidInput("pump wavelength and bandwidth must be positive");
    PumpSpectrum p;
    p.omega_p0 = omega_from_wavelength(lambda_p);
    p.fwhm = kSpeedOfLight * delta_lambda / (lambda_p * lambda_p);
    p.shape = shape;
    return p;
}

double pump_envelope(const PumpSpectrum& p, double omega_sum) {
    const double detune = omega_sum - p.omega_p0;
    const double fwhm_w = kTwoPi * p.fwhm;  // FWHM in angular frequency
    switch (p.shape) {
        case PumpShape::gaussian: {
            const double sigma = fwhm_w / kFwhmPerSigma;
            return std::exp(-detune * detune / (2.0 * sigma * sigma));
        }
        case PumpShape::sech2: {
            const double b = 2.0 * kSech2HalfArg / fwhm_w;
            const double s = 1.0 / std::cosh(b * detune);
            return s * s;
        }
        case PumpShape::tabulated:
            return interp(p.table_omega, p.table_amp, omega_sum, "pump table");
    }
    throw InvalidInput("unsupported pump shape");
}

double DispersionTable::eval_h(double w) const { return interp(omega, k_h, w, "k_H"); }
double DispersionTable::eval_v(double w) const { return interp(omega, k_v, w, "k_V"); }
double DispersionTable::eval_p(double w) const { return interp(omega, k_p, w, "k_P"); }

DispersionTable load_dispersion_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open dispersion table: " + path);
    DispersionTable t;
    std::string line;
    bool header_done = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_done) {  // skip the column header
            header_done = true;
            if (line.find("omega_hz") != std::string::npos) continue;
        }
        std::stringstream ss(line);
        std::string cell;
        double v[4];
        for (int c = 0; c < 4; ++c) {
            if (!std::getline(ss, cell, ','))
                throw InvalidInput("dispersion table row needs 4 columns: " + line);
            v[c] = std::stod(cell);
        }
        t.omega.push_back(v[0] * kTwoPi);  // file stores ordinary frequency in Hz
        t.k_h.push_back(v[1]);
        t.k_v.push_back(v[2]);
        t.k_p.push_back(v[3]);
    }
    if (t.omega.size() < 2) throw InvalidInput("dispersion table too short");
    if (!std::is_sorted(t.omega.begin(), t.omega.end()))
        throw InvalidInput("dispersion table frequencies must increase");
    return t;
}

double phase_mismatch(const PhaseMatchModel& m, double poling_period, double omega_a,
                      double omega_b) {
    if (m.kind == PhaseMatchModel::Kind::tabulated) {
        if (!(poling_period > 0.0)) throw InvalidInput("poling period must be positive");
        return m.table.eval_h(omega_a) + m.table.eval_v(omega_b) - m.table.eval_p(omega_a + omega_b) -
               kTwoPi / poling_period;
    }
    return m.dk0 + m.beta_h * (omega_a - m.omega_ref) + m.beta_v * (omega_b - m.omega_ref);
}

double phase_matching_function(double dk, double length) {
    if (!(length > 0.0)) throw InvalidInput("crystal length must be positive");
    const double x = dk * length / 2.0;
    if (std::abs(x) < 1e-12) return length * (1.0 - x * x / 6.0);
    return length * std::sin(x) / x;
}

JointAmplitude build_jsa(const FrequencyGrid& grid, const PumpSpectrum& pump,
                         const CrystalSpec& crystal, bool normalize_output) {
    validate_grid(grid);
    const auto& m = crystal.model;
    if (m.kind == PhaseMatchModel::Kind::tabulated) {
        // fail fast on coverage instead of mid-way through the fill
        phase_mismatch(m, crystal.poling_period, grid.omega_a.front(), grid.omega_b.front());
        phase_mismatch(m, crystal.poling_period, grid.omega_a.back(), grid.omega_b.back());
    }
    JointAmplitude f;
    f.grid = grid;
    f.values.resize(static_cast<Eigen::Index>(grid.n_a), static_cast<Eigen::Index>(grid.n_b));
    for (std::size_t i = 0; i < grid.n_a; ++i) {
        const double wa = grid.omega_a[i];
        auto* row = f.values.data() + i * grid.n_b;
        for (std::size_t j = 0; j < grid.n_b; ++j) {
            const double wb = grid.omega_b[j];
            const double alpha = pump_envelope(pump, wa + wb);
            const double dk = phase_mismatch(m, crystal.poling_period, wa, wb);
            row[j] = alpha * phase_matching_function(dk, crystal.length) / crystal.length;
        }
    }
    if (normalize_output) normalize(f);
    return f;
}

}  // namespace freqbin
