#ifndef FREQBIN_HOM_HPP
#define FREQBIN_HOM_HPP

#include <vector>

#include "freqbin/grid.hpp"

namespace freqbin {

// Two-photon coincidence probability versus relative delay at a balanced
// beamsplitter:
//   P(tau) = 1/2 [1 - Re sum f(wa,wb) f*(wb,wa) e^{-i(wa-wb)tau} dw^2 / sum |f|^2 dw^2]
//
// The input must be temporally centered (walk-off compensated; see
// delay_shift) for the cross-pass fringe of a synthesized state to appear at
// tau = 0 the way the interferometer measures it.
struct HomCurve {
    std::vector<double> tau;  // s
    std::vector<double> p;    // in [0, 1]; -> 1/2 far outside the coherence region
};

// Evaluates P on n_points delays spanning [-tau_span/2, +tau_span/2].
// Requires a normalized amplitude on a square grid; throws InvalidInput
// otherwise. tau_span must stay below the grid's unaliased range 1/dnu.
HomCurve hom_curve(const JointAmplitude& f, double tau_span, std::size_t n_points);

enum class CentralExtremum { dip, peak };

struct FringeMetrics {
    double period = 0.0;      // s, from the dominant nonzero spectral component
    double visibility = 0.0;  // |P_far - P(0)| / P_far
    CentralExtremum central = CentralExtremum::dip;
};

// Throws InvalidInput for a flat curve (no fringe) or when the detected
// period is sampled by fewer than 8 points.
FringeMetrics fringe_metrics(const HomCurve& curve);

}  // namespace freqbin

#endif
