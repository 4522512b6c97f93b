#if defined(FREQBIN_HAVE_AVX2)

#include "kernels_avx2.hpp"

#include <immintrin.h>

namespace freqbin::kernels::avx2 {

namespace {

inline const double* as_d(const std::complex<double>* z) {
    return reinterpret_cast<const double*>(z);
}
inline double* as_d(std::complex<double>* z) { return reinterpret_cast<double*>(z); }

// [x0 y0 x1 y1] * [u0 v0 u1 v1] -> two complex products per register
inline __m256d cmul(__m256d a, __m256d b) {
    __m256d b_re = _mm256_movedup_pd(b);
    __m256d b_im = _mm256_permute_pd(b, 0xF);
    __m256d a_swap = _mm256_permute_pd(a, 0x5);
    __m256d t = _mm256_mul_pd(a_swap, b_im);
    return _mm256_fmaddsub_pd(a, b_re, t);
}

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

void abs2(const std::complex<double>* z, double* out, std::size_t n) {
    const double* p = as_d(z);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d a = _mm256_loadu_pd(p + 2 * i);
        __m256d b = _mm256_loadu_pd(p + 2 * i + 4);
        __m256d h = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
        _mm256_storeu_pd(out + i, _mm256_permute4x64_pd(h, 0xD8));
    }
    for (; i < n; ++i) out[i] = z[i].real() * z[i].real() + z[i].imag() * z[i].imag();
}

double sum_abs2(const std::complex<double>* z, std::size_t n) {
    const double* p = as_d(z);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d a = _mm256_loadu_pd(p + 2 * i);
        acc = _mm256_fmadd_pd(a, a, acc);
    }
    double r = hsum(acc);
    for (; i < n; ++i) r += z[i].real() * z[i].real() + z[i].imag() * z[i].imag();
    return r;
}

void scale(std::complex<double>* z, double s, std::size_t n) {
    double* p = as_d(z);
    __m256d sv = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        _mm256_storeu_pd(p + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(p + 2 * i), sv));
    }
    for (; i < n; ++i) z[i] *= s;
}

void modulate_rank1(std::complex<double>* row, const std::complex<double>* phase,
                    std::complex<double> w, std::size_t n) {
    double* r = as_d(row);
    const double* q = as_d(phase);
    const __m256d w_re = _mm256_set1_pd(w.real());
    const __m256d w_im = _mm256_set1_pd(w.imag());
    const __m256d one = _mm256_set_pd(0.0, 1.0, 0.0, 1.0);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        __m256d p = _mm256_loadu_pd(q + 2 * j);
        __m256d p_swap = _mm256_permute_pd(p, 0x5);
        __m256d wp = _mm256_fmaddsub_pd(p, w_re, _mm256_mul_pd(p_swap, w_im));
        __m256d m = _mm256_add_pd(wp, one);
        _mm256_storeu_pd(r + 2 * j, cmul(_mm256_loadu_pd(r + 2 * j), m));
    }
    for (; j < n; ++j) row[j] *= 1.0 + w * phase[j];
}

void accumulate(double* acc, const double* x, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), _mm256_loadu_pd(x + i)));
    }
    for (; i < n; ++i) acc[i] += x[i];
}

double sum(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    double r = hsum(acc);
    for (; i < n; ++i) r += x[i];
    return r;
}

std::complex<double> cdot(const std::complex<double>* a, const std::complex<double>* b,
                          std::size_t n) {
    const double* pa = as_d(a);
    const double* pb = as_d(b);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        acc = _mm256_add_pd(acc, cmul(_mm256_loadu_pd(pa + 2 * i), _mm256_loadu_pd(pb + 2 * i)));
    }
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    __m128d s = _mm_add_pd(lo, hi);
    double re = _mm_cvtsd_f64(s);
    double im = _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
    for (; i < n; ++i) {
        re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
    }
    return {re, im};
}

}  // namespace freqbin::kernels::avx2

#endif  // FREQBIN_HAVE_AVX2
