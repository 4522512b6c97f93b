#include "freqbin/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <string>

#include "freqbin/errors.hpp"

#if defined(FREQBIN_HAVE_AVX2)
#include "kernels_avx2.hpp"
#endif

namespace freqbin::kernels {

namespace scalar {

void abs2(const std::complex<double>* z, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = z[i].real() * z[i].real() + z[i].imag() * z[i].imag();
}

double sum_abs2(const std::complex<double>* z, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += z[i].real() * z[i].real() + z[i].imag() * z[i].imag();
    return acc;
}

void scale(std::complex<double>* z, double s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) z[i] *= s;
}

void modulate_rank1(std::complex<double>* row, const std::complex<double>* phase,
                    std::complex<double> w, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) row[j] *= 1.0 + w * phase[j];
}

void accumulate(double* acc, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) acc[i] += x[i];
}

double sum(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

std::complex<double> cdot(const std::complex<double>* a, const std::complex<double>* b,
                          std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
    }
    return {re, im};
}

}  // namespace scalar

namespace {

struct Table {
    void (*abs2)(const std::complex<double>*, double*, std::size_t);
    double (*sum_abs2)(const std::complex<double>*, std::size_t);
    void (*scale)(std::complex<double>*, double, std::size_t);
    void (*modulate_rank1)(std::complex<double>*, const std::complex<double>*,
                           std::complex<double>, std::size_t);
    void (*accumulate)(double*, const double*, std::size_t);
    double (*sum)(const double*, std::size_t);
    std::complex<double> (*cdot)(const std::complex<double>*, const std::complex<double>*,
                                 std::size_t);
};

constexpr Table kScalarTable = {scalar::abs2, scalar::sum_abs2,  scalar::scale, scalar::modulate_rank1,
                                scalar::accumulate, scalar::sum, scalar::cdot};

#if defined(FREQBIN_HAVE_AVX2)
constexpr Table kAvx2Table = {avx2::abs2, avx2::sum_abs2,  avx2::scale, avx2::modulate_rank1,
                              avx2::accumulate, avx2::sum, avx2::cdot};
#endif

bool cpu_has_avx2() {
#if defined(FREQBIN_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend pick_default() {
    if (const char* env = std::getenv("FREQBIN_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
        if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) return Backend::avx2;
    }
    return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

Backend g_backend = pick_default();

const Table& table() {
#if defined(FREQBIN_HAVE_AVX2)
    if (g_backend == Backend::avx2) return kAvx2Table;
#endif
    return kScalarTable;
}

}  // namespace

Backend active_backend() { return g_backend; }

const char* backend_name() { return g_backend == Backend::avx2 ? "avx2" : "scalar"; }

bool backend_supported(Backend b) { return b == Backend::scalar || cpu_has_avx2(); }

void force_backend(Backend b) {
    if (!backend_supported(b)) throw Error("kernel backend not supported on this CPU");
    g_backend = b;
}

void abs2(const std::complex<double>* z, double* out, std::size_t n) { table().abs2(z, out, n); }
double sum_abs2(const std::complex<double>* z, std::size_t n) { return table().sum_abs2(z, n); }
void scale(std::complex<double>* z, double s, std::size_t n) { table().scale(z, s, n); }
void modulate_rank1(std::complex<double>* row, const std::complex<double>* phase,
                    std::complex<double> w, std::size_t n) {
    table().modulate_rank1(row, phase, w, n);
}
void accumulate(double* acc, const double* x, std::size_t n) { table().accumulate(acc, x, n); }
double sum(const double* x, std::size_t n) { return table().sum(x, n); }
std::complex<double> cdot(const std::complex<double>* a, const std::complex<double>* b,
                          std::size_t n) {
    return table().cdot(a, b, n);
}

}  // namespace freqbin::kernels
