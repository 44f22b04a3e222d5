#include "jointmix/error.hpp"
#include "jointmix/joint_em.hpp"
#include "jointmix/kernels.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace jointmix {

std::vector<std::size_t> quantile_labels(std::span<const double> means, std::size_t k, double q) {
    if (!(q > 0.0 && q < 0.5)) {
        throw ParameterError(fmt::format("quantile {} must lie in (0, 0.5)", q));
    }
    const std::size_t m = means.size();
    if (k == 0 || m < k) {
        throw ParameterError(fmt::format("{} rows cannot fill {} components", m, k));
    }

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return means[a] < means[b]; });

    std::vector<std::size_t> labels(m);
    if (k == 3) {
        // The epsilon keeps e.g. 0.1 * 500 from flooring to 49.
        const auto tail = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::floor(q * static_cast<double>(m) + 1e-9)));
        for (std::size_t r = 0; r < m; ++r) {
            labels[order[r]] = r < tail ? 0 : (r >= m - tail ? 2 : 1);
        }
    } else {
        for (std::size_t r = 0; r < m; ++r) labels[order[r]] = r * k / m;
    }
    return labels;
}

Responsibilities initialize_quantile(const PairedDataset& ds, std::size_t K, std::size_t L,
                                     double q) {
    const double n = static_cast<double>(ds.n_patients());
    std::vector<double> gene_means(ds.n_genes());
    for (std::size_t g = 0; g < ds.n_genes(); ++g) {
        gene_means[g] = kernels::row_sum(ds.gene_values(g)) / n;
    }
    std::vector<double> cpg_means(ds.n_cpgs());
    for (std::size_t c = 0; c < ds.n_cpgs(); ++c) {
        cpg_means[c] = kernels::row_sum(ds.cpg_values(c)) / n;
    }

    const auto gene_labels = quantile_labels(gene_means, K, q);
    const auto cpg_labels = quantile_labels(cpg_means, L, q);

    Responsibilities resp;
    resp.u = Matrix(ds.n_genes(), K);
    resp.v = Matrix(ds.n_cpgs(), L);
    for (std::size_t g = 0; g < ds.n_genes(); ++g) resp.u(g, gene_labels[g]) = 1.0;
    for (std::size_t c = 0; c < ds.n_cpgs(); ++c) resp.v(c, cpg_labels[c]) = 1.0;
    set_product_joint(ds, resp);
    return resp;
}

}  // namespace jointmix
