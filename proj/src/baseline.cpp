#include "jointmix/baseline.hpp"

#include "jointmix/error.hpp"
#include "jointmix/kernels.hpp"
#include "jointmix/log.hpp"
#include "jointmix/numeric.hpp"
#include "mixture_moments.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace jointmix {
namespace {

IndepParams m_step_indep(const Matrix& x, const Matrix& resp) {
    const auto m = detail::weighted_moments(
        x.rows(), x.cols(), [&](std::size_t r) { return x.row(r); }, resp, ClusterLayer::gene,
        kEmptyClusterMass, kVarianceFloor);
    IndepParams p;
    p.weights.resize(m.mass.size());
    for (std::size_t k = 0; k < m.mass.size(); ++k) {
        p.weights[k] = m.mass[k] / static_cast<double>(x.rows());
    }
    p.means = m.mean;
    p.variance = m.pooled_var;
    return p;
}

Matrix e_step_indep(const Matrix& x, const IndepParams& p) {
    const std::size_t K = p.weights.size();
    Matrix resp(x.rows(), K);
    std::vector<double> log_w(K);
    for (std::size_t k = 0; k < K; ++k) log_w[k] = std::log(p.weights[k]);
    for (std::size_t r = 0; r < x.rows(); ++r) {
        auto row = resp.row(r);
        kernels::row_sq_dev(x.row(r), p.means, row);
        for (std::size_t k = 0; k < K; ++k) {
            row[k] = log_w[k] + gaussian_row_log_density(row[k], x.cols(), p.variance);
            if (std::isnan(row[k])) {
                throw NumericalError(fmt::format("non-finite density for row {}", r + 1));
            }
        }
        normalize_log_weights(row);
    }
    return resp;
}

double max_change(const IndepParams& a, const IndepParams& b) {
    double m = std::abs(a.variance - b.variance);
    for (std::size_t k = 0; k < a.weights.size(); ++k) {
        m = std::max({m, std::abs(a.weights[k] - b.weights[k]), std::abs(a.means[k] - b.means[k])});
    }
    return m;
}

}  // namespace

IndependentFit fit_independent(const Matrix& values, const IndependentOptions& opts) {
    const std::size_t K = opts.K;
    if (values.rows() < K) {
        throw ParameterError(fmt::format("{} rows cannot fill {} components", values.rows(), K));
    }
    std::vector<double> means(values.rows());
    for (std::size_t r = 0; r < values.rows(); ++r) {
        means[r] = kernels::row_sum(values.row(r)) / static_cast<double>(values.cols());
    }
    const auto labels = quantile_labels(means, K, opts.quantile);

    IndependentFit f;
    f.resp = Matrix(values.rows(), K);
    for (std::size_t r = 0; r < values.rows(); ++r) f.resp(r, labels[r]) = 1.0;
    f.params = m_step_indep(values, f.resp);

    for (std::size_t it = 1; it <= opts.max_iter; ++it) {
        f.resp = e_step_indep(values, f.params);
        IndepParams next = m_step_indep(values, f.resp);
        const double change = max_change(next, f.params);
        f.params = std::move(next);
        f.n_iters = it;
        if (change < opts.tol) {
            f.converged = true;
            break;
        }
    }
    if (!f.converged && opts.max_iter > 0) {
        log::warn("independent EM stopped after {} iterations without converging", opts.max_iter);
    }

    if (opts.relabel) {
        std::vector<std::size_t> order(K);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return f.params.means[a] < f.params.means[b];
        });
        IndepParams p = f.params;
        Matrix resp(f.resp.rows(), K);
        for (std::size_t k = 0; k < K; ++k) {
            p.weights[k] = f.params.weights[order[k]];
            p.means[k] = f.params.means[order[k]];
            for (std::size_t r = 0; r < resp.rows(); ++r) resp(r, k) = f.resp(r, order[k]);
        }
        f.params = std::move(p);
        f.resp = std::move(resp);
    }
    f.map = map_assign(f.resp);
    return f;
}

Matrix gene_matrix(const PairedDataset& ds) {
    Matrix m(ds.n_genes(), ds.n_patients());
    for (std::size_t g = 0; g < ds.n_genes(); ++g) {
        std::copy(ds.gene_values(g).begin(), ds.gene_values(g).end(), m.row(g).begin());
    }
    return m;
}

Matrix cpg_matrix(const PairedDataset& ds) {
    Matrix m(ds.n_cpgs(), ds.n_patients());
    for (std::size_t c = 0; c < ds.n_cpgs(); ++c) {
        std::copy(ds.cpg_values(c).begin(), ds.cpg_values(c).end(), m.row(c).begin());
    }
    return m;
}

double compare_partitions(std::span<const std::size_t> a, std::span<const std::size_t> b) {
    if (a.size() != b.size()) {
        throw ShapeError(fmt::format("labelings have lengths {} and {}", a.size(), b.size()));
    }
    const std::size_t n = a.size();

    auto dense = [](std::span<const std::size_t> labels, std::size_t& count) {
        std::unordered_map<std::size_t, std::size_t> ids;
        std::vector<std::size_t> out(labels.size());
        for (std::size_t i = 0; i < labels.size(); ++i) {
            out[i] = ids.try_emplace(labels[i], ids.size()).first->second;
        }
        count = ids.size();
        return out;
    };
    std::size_t ra = 0;
    std::size_t rb = 0;
    const auto da = dense(a, ra);
    const auto db = dense(b, rb);

    std::vector<double> table(ra * rb, 0.0);
    std::vector<double> row_tot(ra, 0.0);
    std::vector<double> col_tot(rb, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        table[da[i] * rb + db[i]] += 1.0;
        row_tot[da[i]] += 1.0;
        col_tot[db[i]] += 1.0;
    }
    auto pairs = [](double m) { return m * (m - 1.0) / 2.0; };
    double sum_cells = 0.0;
    for (double t : table) sum_cells += pairs(t);
    double sum_rows = 0.0;
    for (double t : row_tot) sum_rows += pairs(t);
    double sum_cols = 0.0;
    for (double t : col_tot) sum_cols += pairs(t);

    const double total = pairs(static_cast<double>(n));
    const double expected = total > 0.0 ? sum_rows * sum_cols / total : 0.0;
    const double max_index = 0.5 * (sum_rows + sum_cols);
    if (max_index == expected) {
        // Both partitions trivial (all singletons or one block); ARI is 0/0.
        return (sum_rows == sum_cols && sum_cells == sum_rows) ? 1.0 : 0.0;
    }
    return (sum_cells - expected) / (max_index - expected);
}

}  // namespace jointmix
