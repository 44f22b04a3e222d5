#include "kernels_internal.hpp"

#include <arm_neon.h>

namespace jointmix::kernels::detail {
namespace {

double sum_neon(const double* x, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vaddq_f64(acc0, vld1q_f64(x + i));
        acc1 = vaddq_f64(acc1, vld1q_f64(x + i + 2));
    }
    if (i + 2 <= n) {
        acc0 = vaddq_f64(acc0, vld1q_f64(x + i));
        i += 2;
    }
    double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) acc += x[i];
    return acc;
}

void sq_dev_neon(const double* x, std::size_t n, const double* centers, std::size_t n_centers,
                 double* out) {
    for (std::size_t k = 0; k < n_centers; ++k) {
        const float64x2_t c = vdupq_n_f64(centers[k]);
        float64x2_t acc0 = vdupq_n_f64(0.0);
        float64x2_t acc1 = vdupq_n_f64(0.0);
        std::size_t i = 0;
        for (; i + 4 <= n; i += 4) {
            const float64x2_t d0 = vsubq_f64(vld1q_f64(x + i), c);
            const float64x2_t d1 = vsubq_f64(vld1q_f64(x + i + 2), c);
            acc0 = vfmaq_f64(acc0, d0, d0);
            acc1 = vfmaq_f64(acc1, d1, d1);
        }
        if (i + 2 <= n) {
            const float64x2_t d = vsubq_f64(vld1q_f64(x + i), c);
            acc0 = vfmaq_f64(acc0, d, d);
            i += 2;
        }
        double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
        for (; i < n; ++i) {
            const double d = x[i] - centers[k];
            acc += d * d;
        }
        out[k] = acc;
    }
}

constexpr KernelTable kNeon{Backend::neon, &sum_neon, &sq_dev_neon};

}  // namespace

const KernelTable* neon_kernels() noexcept { return &kNeon; }

}  // namespace jointmix::kernels::detail
