#ifndef FREQBIN_GRID_HPP
#define FREQBIN_GRID_HPP

#include <Eigen/Core>
#include <complex>
#include <cstddef>
#include <vector>

namespace freqbin {

using AmpMatrix =
    Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RealMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Square-ish uniform grid of angular frequencies. Axis a indexes rows of a
// JointAmplitude (signal), axis b indexes columns (idler). Both axes are
// strictly increasing with constant step and symmetric about omega_center.
struct FrequencyGrid {
    std::size_t n_a = 0, n_b = 0;
    double omega_center = 0.0;             // rad/s
    std::vector<double> omega_a, omega_b;  // rad/s

    double step() const { return n_a > 1 ? omega_a[1] - omega_a[0] : 0.0; }
    bool square() const { return n_a == n_b && omega_a == omega_b; }
};

// Both axes = omega_center +/- span/2 with n points each.
// Throws InvalidInput for n < 8 or span <= 0.
FrequencyGrid build_frequency_grid(double omega_center, double span, std::size_t n);

// Checks the uniform-step and symmetry invariants; throws InvalidInput.
void validate_grid(const FrequencyGrid& grid);

// The biphoton state f(omega_a, omega_b) sampled on a grid.
struct JointAmplitude {
    FrequencyGrid grid;
    AmpMatrix values;        // n_a x n_b
    bool normalized = false; // sum |f|^2 dw^2 == 1 claimed
    bool flat_phase = false; // derived from intensity data; phase was discarded

    // sum |f|^2 dw^2
    double total_intensity() const;
};

// Scales so that total_intensity() == 1. Throws InvalidInput on a zero field.
JointAmplitude& normalize(JointAmplitude& f);

}  // namespace freqbin

#endif
