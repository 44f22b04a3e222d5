#pragma once

// Row reductions used by the density evaluation and the M-step. Each backend
// implements the same table; the scalar one is the reference and the vector
// ones are checked against it in tests/test_kernels.cpp.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace jointmix::kernels {

enum class Backend { scalar, avx2, neon };

struct KernelTable {
    Backend backend;
    // sum_n x[n]
    double (*sum)(const double* x, std::size_t n);
    // out[k] = sum_n (x[n] - centers[k])^2 for k < n_centers
    void (*sq_dev)(const double* x, std::size_t n, const double* centers, std::size_t n_centers,
                   double* out);
};

const KernelTable& scalar_table() noexcept;
// nullptr when the backend was not compiled in or the CPU lacks it.
const KernelTable* avx2_table() noexcept;
const KernelTable* neon_table() noexcept;

const KernelTable* table_for(Backend b) noexcept;

// Table picked at first use: best available backend, unless the
// JOINTMIX_KERNELS environment variable names another one.
const KernelTable& active() noexcept;

// Overrides the active backend. Returns false when it is unavailable.
bool select(Backend b) noexcept;

std::string_view name(Backend b) noexcept;
std::optional<Backend> parse_backend(std::string_view s) noexcept;

inline double row_sum(std::span<const double> x) { return active().sum(x.data(), x.size()); }

inline void row_sq_dev(std::span<const double> x, std::span<const double> centers,
                       std::span<double> out) {
    active().sq_dev(x.data(), x.size(), centers.data(), centers.size(), out.data());
}

}  // namespace jointmix::kernels
