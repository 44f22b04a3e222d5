// Compiled with -mavx2 -mfma. Only reached through the dispatch table after a
// CPUID check, so nothing here may run on a CPU without AVX2.

#include "kernels_internal.hpp"

#include <immintrin.h>

namespace jointmix::kernels::detail {
namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d pair = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

double sum_avx2(const double* x, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
        acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + 4));
    }
    if (i + 4 <= n) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
        i += 4;
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += x[i];
    return acc;
}

void sq_dev_avx2(const double* x, std::size_t n, const double* centers, std::size_t n_centers,
                 double* out) {
    for (std::size_t k = 0; k < n_centers; ++k) {
        const __m256d c = _mm256_set1_pd(centers[k]);
        __m256d acc0 = _mm256_setzero_pd();
        __m256d acc1 = _mm256_setzero_pd();
        std::size_t i = 0;
        for (; i + 8 <= n; i += 8) {
            const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(x + i), c);
            const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(x + i + 4), c);
            acc0 = _mm256_fmadd_pd(d0, d0, acc0);
            acc1 = _mm256_fmadd_pd(d1, d1, acc1);
        }
        if (i + 4 <= n) {
            const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), c);
            acc0 = _mm256_fmadd_pd(d, d, acc0);
            i += 4;
        }
        double acc = hsum(_mm256_add_pd(acc0, acc1));
        for (; i < n; ++i) {
            const double d = x[i] - centers[k];
            acc += d * d;
        }
        out[k] = acc;
    }
}

constexpr KernelTable kAvx2{Backend::avx2, &sum_avx2, &sq_dev_avx2};

}  // namespace

const KernelTable* avx2_kernels() noexcept { return &kAvx2; }

}  // namespace jointmix::kernels::detail
