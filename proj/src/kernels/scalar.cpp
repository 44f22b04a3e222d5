#include "jointmix/kernels.hpp"

namespace jointmix::kernels {
namespace {

double sum_scalar(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

void sq_dev_scalar(const double* x, std::size_t n, const double* centers, std::size_t n_centers,
                   double* out) {
    for (std::size_t k = 0; k < n_centers; ++k) {
        const double c = centers[k];
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = x[i] - c;
            acc += d * d;
        }
        out[k] = acc;
    }
}

constexpr KernelTable kScalar{Backend::scalar, &sum_scalar, &sq_dev_scalar};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace jointmix::kernels
