#include "freqbin/hom.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "freqbin/constants.hpp"
#include "freqbin/errors.hpp"
#include "freqbin/kernels.hpp"

namespace freqbin {

HomCurve hom_curve(const JointAmplitude& f, double tau_span, std::size_t n_points) {
    validate_grid(f.grid);
    if (!f.grid.square()) throw InvalidInput("hom_curve needs a square grid");
    if (n_points < 2 || !(tau_span > 0.0)) throw InvalidInput("bad delay sampling");
    const double norm = f.total_intensity();
    if (std::abs(norm - 1.0) > 1e-6) throw InvalidInput("hom_curve needs a normalized amplitude");

    const std::size_t n = f.grid.n_a;
    const double dw = f.grid.step();
    if (tau_span >= kTwoPi / dw)
        throw InvalidInput("delay span exceeds the grid's unaliased range");

    // collapse the exchange product onto the frequency-difference diagonal:
    //   h[d] = sum_{i-j=d} f(i,j) conj(f(j,i)) dw^2, with h[-d] = conj(h[d])
    AmpMatrix ft = f.values.transpose();
    std::vector<std::complex<double>> h(n, 0.0);  // d = 0..n-1
    for (std::size_t i = 0; i < n; ++i) {
        const auto* row = f.values.data() + i * n;
        const auto* col = ft.data() + i * n;  // f(j,i) contiguous in j
        for (std::size_t j = 0; j <= i; ++j) h[i - j] += row[j] * std::conj(col[j]);
    }
    for (auto& v : h) v *= dw * dw;
    // h[0] = sum |f(i,i)|^2 dw^2 is real by construction

    HomCurve curve;
    curve.tau.resize(n_points);
    curve.p.resize(n_points);
    std::vector<std::complex<double>> ramp(n > 1 ? n - 1 : 0);
    for (std::size_t k = 0; k < n_points; ++k) {
        const double tau =
            -tau_span / 2.0 + tau_span * static_cast<double>(k) / static_cast<double>(n_points - 1);
        for (std::size_t d = 1; d < n; ++d)
            ramp[d - 1] = std::polar(1.0, -static_cast<double>(d) * dw * tau);
        // S(tau) = h[0] + 2 Re sum_{d>=1} h[d] e^{-i d dw tau}  (real by symmetry)
        const std::complex<double> s_pos = kernels::cdot(h.data() + 1, ramp.data(), n - 1);
        const double s = h[0].real() + 2.0 * s_pos.real();
        curve.tau[k] = tau;
        curve.p[k] = std::clamp(0.5 * (1.0 - s / norm), 0.0, 1.0);
    }
    return curve;
}

FringeMetrics fringe_metrics(const HomCurve& curve) {
    const std::size_t n = curve.tau.size();
    if (n < 16) throw InvalidInput("curve too short");
    const double dt = curve.tau[1] - curve.tau[0];
    const double span = curve.tau.back() - curve.tau.front();

    const double mean = std::accumulate(curve.p.begin(), curve.p.end(), 0.0) / double(n);
    double var = 0.0;
    for (double p : curve.p) var += (p - mean) * (p - mean);
    if (var / double(n) < 1e-18) throw InvalidInput("no fringe: curve is constant");

    // subtracting the tail baseline (rather than the mean) removes the DC
    // pedestal exactly, so its window leakage cannot drag the spectral peak
    const std::size_t tail0 = std::max<std::size_t>(1, n / 20);
    double base = 0.0;
    for (std::size_t i = 0; i < tail0; ++i) base += curve.p[i] + curve.p[n - 1 - i];
    base /= static_cast<double>(2 * tail0);

    // dominant nonzero frequency of P - baseline on a fine spectral lattice
    const double f_lo = 0.75 / span;
    const double f_hi = 0.45 / dt;
    const std::size_t m = 16 * n;
    double best_f = f_lo, best_mag = -1.0, best_prev = 0.0, best_next = 0.0;
    std::vector<double> mags(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double freq = f_lo + (f_hi - f_lo) * static_cast<double>(k) / double(m - 1);
        std::complex<double> acc = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            acc += (curve.p[i] - base) * std::polar(1.0, -kTwoPi * freq * curve.tau[i]);
        mags[k] = std::abs(acc);
    }
    for (std::size_t k = 1; k + 1 < m; ++k) {
        if (mags[k] > best_mag && mags[k] >= mags[k - 1] && mags[k] >= mags[k + 1]) {
            best_mag = mags[k];
            best_f = f_lo + (f_hi - f_lo) * static_cast<double>(k) / double(m - 1);
            best_prev = mags[k - 1];
            best_next = mags[k + 1];
        }
    }
    if (best_mag < 0.0) throw InvalidInput("no fringe: spectrum has no interior peak");
    // parabolic sharpening
    const double denom = best_prev - 2.0 * best_mag + best_next;
    if (denom < 0.0) {
        const double df = (f_hi - f_lo) / double(m - 1);
        best_f += 0.5 * (best_prev - best_next) / denom * df;
    }

    FringeMetrics fm;
    fm.period = 1.0 / best_f;
    if (fm.period < 8.0 * dt) throw InvalidInput("curve undersampled: fewer than 8 points per period");

    // far baseline from the outer 5% tails on each side
    const std::size_t tail = std::max<std::size_t>(1, n / 20);
    double far = 0.0;
    for (std::size_t i = 0; i < tail; ++i) far += curve.p[i] + curve.p[n - 1 - i];
    far /= static_cast<double>(2 * tail);

    // P at tau = 0 (nearest sample)
    std::size_t i0 = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs(curve.tau[i]) < std::abs(curve.tau[i0])) i0 = i;
    const double p0 = curve.p[i0];

    fm.visibility = far > 0.0 ? std::abs(far - p0) / far : 0.0;
    fm.central = p0 < far ? CentralExtremum::dip : CentralExtremum::peak;
    return fm;
}

}  // namespace freqbin
