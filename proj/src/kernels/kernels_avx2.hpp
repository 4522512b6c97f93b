#ifndef FREQBIN_KERNELS_AVX2_HPP
#define FREQBIN_KERNELS_AVX2_HPP

#include <complex>
#include <cstddef>

// AVX2+FMA variants, compiled in their own translation unit with -mavx2 -mfma.
// Only declared on x86-64; callers go through the dispatch table in kernels.cpp.
namespace freqbin::kernels::avx2 {

void abs2(const std::complex<double>* z, double* out, std::size_t n);
double sum_abs2(const std::complex<double>* z, std::size_t n);
void scale(std::complex<double>* z, double s, std::size_t n);
void modulate_rank1(std::complex<double>* row, const std::complex<double>* phase,
                    std::complex<double> w, std::size_t n);
void accumulate(double* acc, const double* x, std::size_t n);
double sum(const double* x, std::size_t n);
std::complex<double> cdot(const std::complex<double>* a, const std::complex<double>* b,
                          std::size_t n);

}  // namespace freqbin::kernels::avx2

#endif
