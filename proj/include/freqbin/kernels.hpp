#ifndef FREQBIN_KERNELS_HPP
#define FREQBIN_KERNELS_HPP

#include <complex>
#include <cstddef>

// Data-parallel inner loops used by the field operations. Every kernel has a
// scalar reference implementation (kernels::scalar) and, on x86-64 with AVX2+FMA,
// a vectorized variant selected once at startup. The dispatch can be overridden
// with the FREQBIN_KERNELS environment variable ("scalar" or "avx2") or
// force_backend(); the two variants are equivalence-tested against each other.
//
// Reductions may reassociate sums, so cross-backend agreement is to rounding
// (~1e-13 relative), not bitwise.
namespace freqbin::kernels {

enum class Backend { scalar, avx2 };

Backend active_backend();
const char* backend_name();
bool backend_supported(Backend b);

// Throws freqbin::Error if the backend is not supported on this CPU.
void force_backend(Backend b);

// out[i] = |z[i]|^2
void abs2(const std::complex<double>* z, double* out, std::size_t n);

// sum_i |z[i]|^2
double sum_abs2(const std::complex<double>* z, std::size_t n);

// z[i] *= s
void scale(std::complex<double>* z, double s, std::size_t n);

// row[j] *= 1 + w*phase[j]
void modulate_rank1(std::complex<double>* row, const std::complex<double>* phase,
                    std::complex<double> w, std::size_t n);

// acc[i] += x[i]
void accumulate(double* acc, const double* x, std::size_t n);

// sum_i x[i]
double sum(const double* x, std::size_t n);

// sum_i a[i]*b[i]  (no conjugation)
std::complex<double> cdot(const std::complex<double>* a, const std::complex<double>* b,
                          std::size_t n);

namespace scalar {
void abs2(const std::complex<double>* z, double* out, std::size_t n);
double sum_abs2(const std::complex<double>* z, std::size_t n);
void scale(std::complex<double>* z, double s, std::size_t n);
void modulate_rank1(std::complex<double>* row, const std::complex<double>* phase,
                    std::complex<double> w, std::size_t n);
void accumulate(double* acc, const double* x, std::size_t n);
double sum(const double* x, std::size_t n);
std::complex<double> cdot(const std::complex<double>* a, const std::complex<double>* b,
                          std::size_t n);
}  // namespace scalar

}  // namespace freqbin::kernels

#endif
