#ifndef FREQBIN_CONSTANTS_HPP
#define FREQBIN_CONSTANTS_HPP

#include <numbers>

namespace freqbin {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Gaussian FWHM = kFwhmPerSigma * sigma
inline constexpr double kFwhmPerSigma = 2.3548200450309493;

// frequency (Hz) <-> vacuum wavelength (m)
inline double wavelength_from_omega(double omega) { return kTwoPi * kSpeedOfLight / omega; }
inline double omega_from_wavelength(double lambda) { return kTwoPi * kSpeedOfLight / lambda; }

}  // namespace freqbin

#endif
