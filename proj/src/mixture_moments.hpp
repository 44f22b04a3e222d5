#pragma once

#include "jointmix/error.hpp"
#include "jointmix/kernels.hpp"
#include "jointmix/matrix.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <vector>

namespace jointmix::detail {

// Responsibility-weighted per-component moments of a set of equal-length
// rows: mass_k = sum_r w_rk, mean_k = sum_r w_rk sum_n x_rn / (n mass_k),
// var_k = sum_r w_rk sum_n (x_rn - mean_k)^2 / (n mass_k), and the pooled
// variance sum_k (mass_k / rows) var_k. Sums run in row order.
struct ComponentMoments {
    std::vector<double> mass;
    std::vector<double> mean;
    std::vector<double> var;
    double pooled_var = 0.0;
};

template <typename RowAt>
ComponentMoments weighted_moments(std::size_t n_rows, std::size_t n_cols, RowAt row_at,
                                  const Matrix& w, ClusterLayer layer, double min_mass,
                                  double var_floor) {
    const std::size_t k_count = w.cols();
    ComponentMoments m;
    m.mass.assign(k_count, 0.0);
    m.mean.assign(k_count, 0.0);
    m.var.assign(k_count, 0.0);

    for (std::size_t r = 0; r < n_rows; ++r) {
        const double s = kernels::row_sum(row_at(r));
        for (std::size_t k = 0; k < k_count; ++k) {
            m.mass[k] += w(r, k);
            m.mean[k] += w(r, k) * s;
        }
    }
    const double n = static_cast<double>(n_cols);
    for (std::size_t k = 0; k < k_count; ++k) {
        if (!(m.mass[k] >= min_mass)) {
            throw DegenerateClusterError(
                layer, k,
                fmt::format("{} component {} is empty (total responsibility {:.3g})",
                            layer == ClusterLayer::gene ? "gene" : "CpG", k + 1, m.mass[k]));
        }
        m.mean[k] /= n * m.mass[k];
    }

    std::vector<double> sq(k_count);
    double pooled = 0.0;
    for (std::size_t r = 0; r < n_rows; ++r) {
        kernels::row_sq_dev(row_at(r), m.mean, sq);
        for (std::size_t k = 0; k < k_count; ++k) m.var[k] += w(r, k) * sq[k];
    }
    for (std::size_t k = 0; k < k_count; ++k) {
        pooled += m.var[k];
        m.var[k] /= n * m.mass[k];
    }
    m.pooled_var = std::max(pooled / (n * static_cast<double>(n_rows)), var_floor);
    return m;
}

}  // namespace jointmix::detail
