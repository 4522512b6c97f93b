#include "freqbin/grid.hpp"

#include <cmath>

#include "freqbin/errors.hpp"
#include "freqbin/kernels.hpp"

namespace freqbin {

FrequencyGrid build_frequency_grid(double omega_center, double span, std::size_t n) {
    if (n < 8) throw InvalidInput("frequency grid needs at least 8 points");
    if (!(span > 0.0)) throw InvalidInput("frequency grid span must be positive");
    FrequencyGrid g;
    g.n_a = g.n_b = n;
    g.omega_center = omega_center;
    g.omega_a.resize(n);
    const double start = omega_center - span / 2.0;
    const double step = span / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) g.omega_a[i] = start + step * static_cast<double>(i);
    g.omega_b = g.omega_a;
    return g;
}

void validate_grid(const FrequencyGrid& grid) {
    auto check_axis = [&](const std::vector<double>& w) {
        if (w.size() < 2) throw InvalidInput("grid axis too short");
        const double step = w[1] - w[0];
        if (!(step > 0.0)) throw InvalidInput("grid axis not increasing");
        for (std::size_t i = 1; i < w.size(); ++i) {
            const double d = w[i] - w[i - 1];
            if (std::abs(d - step) > 1e-9 * step) throw InvalidInput("grid axis step not uniform");
        }
        // symmetry about the center within one step
        const double mid = 0.5 * (w.front() + w.back());
        if (std::abs(mid - grid.omega_center) > step)
            throw InvalidInput("grid axis not symmetric about its center");
    };
    if (grid.omega_a.size() != grid.n_a || grid.omega_b.size() != grid.n_b)
        throw InvalidInput("grid axis length mismatch");
    check_axis(grid.omega_a);
    check_axis(grid.omega_b);
}

double JointAmplitude::total_intensity() const {
    const double dw = grid.step();
    return kernels::sum_abs2(values.data(), static_cast<std::size_t>(values.size())) * dw * dw;
}

JointAmplitude& normalize(JointAmplitude& f) {
    const double total = f.total_intensity();
    if (!(total > 0.0)) throw InvalidInput("cannot normalize a zero amplitude");
    kernels::scale(f.values.data(), 1.0 / std::sqrt(total),
                   static_cast<std::size_t>(f.values.size()));
    f.normalized = true;
    return f;
}

}  // namespace freqbin
