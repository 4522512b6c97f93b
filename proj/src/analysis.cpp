#include "freqbin/analysis.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "freqbin/constants.hpp"
#include "freqbin/errors.hpp"
#include "freqbin/kernels.hpp"

namespace freqbin {

namespace {

std::vector<double> moving_average(const std::vector<double>& x, std::size_t window) {
    const std::size_t n = x.size();
    if (window < 2) return x;
    std::vector<double> out(n);
    const std::ptrdiff_t half = static_cast<std::ptrdiff_t>(window / 2);
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + x[i];
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - half);
        const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, i + half);
        out[i] = (prefix[hi + 1] - prefix[lo]) / static_cast<double>(hi - lo + 1);
    }
    return out;
}

// Rough modulation period (samples) from the autocorrelation of the detrended
// signal; 0 when no modulation is found.
std::size_t rough_period(const std::vector<double>& m) {
    const std::size_t n = m.size();
    if (n < 8) return 0;
    auto trend = moving_average(m, std::max<std::size_t>(5, n / 8));
    std::vector<double> hp(n);
    for (std::size_t i = 0; i < n; ++i) hp[i] = m[i] - trend[i];
    const double r0 =
        std::inner_product(hp.begin(), hp.end(), hp.begin(), 0.0);
    if (!(r0 > 0.0)) return 0;

    std::size_t first_neg = 0;
    for (std::size_t k = 1; k < n / 2; ++k) {
        double r = 0.0;
        for (std::size_t i = 0; i + k < n; ++i) r += hp[i] * hp[i + k];
        if (r < 0.0) {
            first_neg = k;
            break;
        }
    }
    if (first_neg == 0) return 0;

    std::size_t best_k = 0;
    double best_r = 0.05 * r0;  // refuse noise-level "periods"
    for (std::size_t k = first_neg; k < n / 2; ++k) {
        double r = 0.0;
        for (std::size_t i = 0; i + k < n; ++i) r += hp[i] * hp[i + k];
        if (r > best_r) {
            best_r = r;
            best_k = k;
        }
    }
    return best_k;
}

struct Peak {
    double pos;  // fractional sample index
    double height;
};

// parabolic refinement around a local maximum
double refine_apex(const std::vector<double>& y, std::size_t i) {
    if (i == 0 || i + 1 >= y.size()) return static_cast<double>(i);
    const double denom = y[i - 1] - 2.0 * y[i] + y[i + 1];
    if (denom >= 0.0) return static_cast<double>(i);
    const double d = 0.5 * (y[i - 1] - y[i + 1]) / denom;
    return static_cast<double>(i) + std::clamp(d, -0.5, 0.5);
}

// width (samples) at half of the peak's own height, by linear interpolation
double half_width(const std::vector<double>& y, std::size_t apex) {
    const double half = 0.5 * y[apex];
    double left = 0.0, right = static_cast<double>(y.size() - 1);
    for (std::size_t i = apex; i-- > 0;) {
        if (y[i] <= half) {
            left = static_cast<double>(i) + (half - y[i]) / (y[i + 1] - y[i]);
            break;
        }
        if (i == 0) left = 0.0;
    }
    for (std::size_t i = apex + 1; i < y.size(); ++i) {
        if (y[i] <= half) {
            right = static_cast<double>(i) - (half - y[i]) / (y[i - 1] - y[i]);
            break;
        }
    }
    return right - left;
}

}  // namespace

SchmidtResult schmidt_decompose(const JointAmplitude& f, double threshold) {
    if (f.values.size() == 0) throw InvalidInput("empty amplitude");
    if (!f.values.allFinite()) throw InvalidInput("amplitude contains non-finite entries");

    Eigen::BDCSVD<Eigen::MatrixXcd> svd(f.values);
    const auto& sv = svd.singularValues();
    double total = 0.0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) total += sv[i] * sv[i];
    if (!(total > 0.0)) throw InvalidInput("cannot decompose a zero amplitude");

    SchmidtResult r;
    r.from_intensity = f.flat_phase;
    r.coefficients.reserve(static_cast<std::size_t>(sv.size()));
    double purity = 0.0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        const double lam = sv[i] * sv[i] / total;
        r.coefficients.push_back(lam);
        purity += lam * lam;
    }
    r.purity = purity;
    r.schmidt_number = 1.0 / purity;
    const double cutoff = threshold * r.coefficients.front();
    r.modes_retained = static_cast<std::size_t>(
        std::count_if(r.coefficients.begin(), r.coefficients.end(),
                      [cutoff](double l) { return l >= cutoff; }));
    return r;
}

JointAmplitude jsa_from_jsi(const RealMatrix& jsi, const FrequencyGrid& grid) {
    if (jsi.rows() != static_cast<Eigen::Index>(grid.n_a) ||
        jsi.cols() != static_cast<Eigen::Index>(grid.n_b))
        throw InvalidInput("intensity shape does not match grid");
    if ((jsi.array() < 0.0).any()) throw InvalidInput("intensity must be non-negative");
    if (!(jsi.maxCoeff() > 0.0)) throw InvalidInput("intensity is identically zero");
    JointAmplitude f;
    f.grid = grid;
    f.values = jsi.array().sqrt().matrix().cast<std::complex<double>>();
    f.flat_phase = true;
    return f;
}

std::pair<std::vector<double>, std::vector<double>> marginals(const RealMatrix& jsi,
                                                              const FrequencyGrid& grid) {
    if (jsi.rows() != static_cast<Eigen::Index>(grid.n_a) ||
        jsi.cols() != static_cast<Eigen::Index>(grid.n_b))
        throw InvalidInput("intensity shape does not match grid");
    const double dw = grid.step();
    std::vector<double> m_a(grid.n_a, 0.0), m_b(grid.n_b, 0.0);
    for (std::size_t i = 0; i < grid.n_a; ++i) {
        const double* row = jsi.data() + i * grid.n_b;
        m_a[i] = kernels::sum(row, grid.n_b) * dw;
        kernels::accumulate(m_b.data(), row, grid.n_b);
    }
    for (auto& v : m_b) v *= dw;
    return {std::move(m_a), std::move(m_b)};
}

DifferenceProfile difference_profile(const RealMatrix& jsi, const FrequencyGrid& grid) {
    if (!grid.square()) throw InvalidInput("difference profile needs a square grid");
    const std::size_t n = grid.n_a;
    const double dnu = grid.step() / kTwoPi;
    DifferenceProfile p;
    p.axis_hz.resize(2 * n - 1);
    p.value.assign(2 * n - 1, 0.0);
    for (std::size_t d = 0; d < 2 * n - 1; ++d)
        p.axis_hz[d] = (static_cast<double>(d) - static_cast<double>(n - 1)) * dnu;
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = jsi.data() + i * n;
        double* base = p.value.data() + (n - 1) + i;
        for (std::size_t j = 0; j < n; ++j) base[-static_cast<std::ptrdiff_t>(j)] += row[j];
    }
    return p;
}

BinReport detect_bins(const std::vector<double>& marginal, const std::vector<double>& axis_hz,
                      double threshold_db) {
    const std::size_t n = marginal.size();
    if (n < 3 || axis_hz.size() != n) throw InvalidInput("marginal and axis sizes inconsistent");
    if (*std::min_element(marginal.begin(), marginal.end()) < 0.0)
        throw InvalidInput("marginal must be non-negative");
    const double dnu = axis_hz[1] - axis_hz[0];
    if (!(dnu > 0.0)) throw InvalidInput("axis must increase");

    const std::size_t period = rough_period(marginal);
    const std::size_t env_window = period > 0 ? 3 * period : std::max<std::size_t>(5, n / 8);
    const auto envelope = moving_average(marginal, env_window);
    const double env_peak = *std::max_element(envelope.begin(), envelope.end());
    const double thr = env_peak * std::pow(10.0, threshold_db / 10.0);

    // mild [1 2 1]/4 smoothing so single-sample noise does not mint peaks
    std::vector<double> ms(n);
    ms[0] = marginal[0];
    ms[n - 1] = marginal[n - 1];
    for (std::size_t i = 1; i + 1 < n; ++i)
        ms[i] = 0.25 * (marginal[i - 1] + 2.0 * marginal[i] + marginal[i + 1]);

    // dividing out the envelope keeps its slope from dragging peak centers
    std::vector<double> flat(n);
    for (std::size_t i = 0; i < n; ++i)
        flat[i] = ms[i] / std::max(envelope[i], 1e-12 * env_peak);

    // local maxima of the flattened signal, thresholded on the raw amplitude
    // (plateaus resolve to their centroid)
    std::vector<Peak> peaks;
    std::size_t i = 1;
    while (i + 1 < n) {
        if (flat[i] > flat[i - 1] && flat[i] >= flat[i + 1]) {
            std::size_t j = i;
            while (j + 1 < n && flat[j + 1] == flat[i]) ++j;
            if (j + 1 >= n || flat[j + 1] < flat[i]) {
                const std::size_t apex_lo = i, apex_hi = j;
                if (ms[(apex_lo + j) / 2] >= thr) {
                    double pos;
                    if (apex_hi > apex_lo)
                        pos = 0.5 * static_cast<double>(apex_lo + apex_hi);
                    else
                        pos = refine_apex(flat, apex_lo);
                    peaks.push_back({pos, ms[apex_lo]});
                }
            }
            i = j + 1;
        } else {
            ++i;
        }
    }
    if (peaks.empty()) throw InvalidInput("no peaks above threshold");

    // merge split tops closer than half the modulation period (keep the taller)
    if (period > 1 && peaks.size() > 1) {
        std::vector<Peak> merged;
        for (const auto& p : peaks) {
            if (!merged.empty() && p.pos - merged.back().pos < 0.5 * static_cast<double>(period)) {
                if (p.height > merged.back().height) merged.back() = p;
            } else {
                merged.push_back(p);
            }
        }
        peaks.swap(merged);
    }

    BinReport r;
    for (const auto& p : peaks) {
        r.centers_hz.push_back(axis_hz.front() + p.pos * dnu);
        const auto apex = static_cast<std::size_t>(std::lround(p.pos));
        r.fwhm_hz.push_back(half_width(ms, std::min(apex, n - 1)) * dnu);
    }
    r.count = peaks.size();
    if (peaks.size() < 2) {
        r.single_peak = true;
        return r;
    }
    std::vector<double> gaps(r.centers_hz.size() - 1);
    for (std::size_t k = 0; k + 1 < r.centers_hz.size(); ++k)
        gaps[k] = r.centers_hz[k + 1] - r.centers_hz[k];
    std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
    double med = gaps[gaps.size() / 2];
    if (gaps.size() % 2 == 0) {
        auto lower = *std::max_element(gaps.begin(), gaps.begin() + gaps.size() / 2);
        med = 0.5 * (med + lower);
    }
    r.spacing_hz = med;
    return r;
}

double modulation_contrast(const std::vector<double>& values, double step, double period) {
    double total = 0.0;
    std::complex<double> x1 = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        total += values[k];
        x1 += values[k] * std::polar(1.0, -kTwoPi * static_cast<double>(k) * step / period);
    }
    if (!(total > 0.0)) return 1.0;
    const double v = std::clamp(2.0 * std::abs(x1) / total, 0.0, 1.0);
    return (1.0 - v) / (1.0 + v);
}

JointAmplitude extract_bin(const RealMatrix& jsi, const FrequencyGrid& grid, double center_a_hz,
                           double window_hz) {
    validate_grid(grid);
    const double wa_c = kTwoPi * center_a_hz;
    const double wb_c = 2.0 * grid.omega_center - wa_c;  // anticorrelated partner
    const double half = kTwoPi * window_hz / 2.0;
    const double dw = grid.step();

    auto crop_range = [&](const std::vector<double>& axis, double c) {
        const double lo = c - half, hi = c + half;
        if (lo < axis.front() - 0.5 * dw || hi > axis.back() + 0.5 * dw)
            throw InvalidInput("bin window falls outside the grid");
        const auto i0 = static_cast<std::size_t>(std::ceil((lo - axis.front()) / dw - 1e-9));
        const auto i1 = static_cast<std::size_t>(std::floor((hi - axis.front()) / dw + 1e-9));
        return std::make_pair(i0, std::min(i1, axis.size() - 1));
    };
    const auto [a0, a1] = crop_range(grid.omega_a, wa_c);
    const auto [b0, b1] = crop_range(grid.omega_b, wb_c);
    if (a1 <= a0 + 1 || b1 <= b0 + 1) throw InvalidInput("bin window too small for the grid step");

    FrequencyGrid sub;
    sub.n_a = a1 - a0 + 1;
    sub.n_b = b1 - b0 + 1;
    sub.omega_a.assign(grid.omega_a.begin() + a0, grid.omega_a.begin() + a1 + 1);
    sub.omega_b.assign(grid.omega_b.begin() + b0, grid.omega_b.begin() + b1 + 1);
    sub.omega_center = 0.5 * (sub.omega_a.front() + sub.omega_a.back());

    RealMatrix w = jsi.block(a0, b0, sub.n_a, sub.n_b);
    JointAmplitude f = jsa_from_jsi(w, sub);
    return f;
}

}  // namespace freqbin
