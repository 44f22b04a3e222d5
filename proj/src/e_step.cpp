#include "jointmix/error.hpp"
#include "jointmix/joint_em.hpp"
#include "jointmix/kernels.hpp"
#include "jointmix/numeric.hpp"
#include "jointmix/parallel.hpp"

#include <fmt/format.h>

#include <cmath>

namespace jointmix {
namespace {

// Per-row log densities sum_n log N(row_n; means_k, var) for every component.
void row_log_densities(std::span<const double> row, std::span<const double> means, double var,
                       std::span<double> out) {
    kernels::row_sq_dev(row, means, out);
    for (double& d : out) d = gaussian_row_log_density(d, row.size(), var);
}

bool all_finite(std::span<const double> v) {
    for (double x : v) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

// weight * log_p, where a zero weight contributes nothing even if log_p = -inf.
double soft_log_term(double weight, double log_p) { return weight == 0.0 ? 0.0 : weight * log_p; }

struct GeneWorkspace {
    std::vector<double> log_x;  // K
    std::vector<double> log_y;  // C_g * L
    std::vector<double> u;      // K
    std::vector<double> v;      // C_g * L
    std::vector<double> v_total;  // L, v summed over the gene's CpGs
    std::vector<double> a;      // scratch, max(K, L)
};

std::size_t fixed_point_gene(const PairedDataset& ds, const JointParams& p, const Matrix& log_pi,
                             const Responsibilities& warm, Responsibilities& out, std::size_t g,
                             const EStepOptions& opts, GeneWorkspace& ws) {
    const std::size_t K = p.K;
    const std::size_t L = p.L;
    const auto cpgs = ds.cpgs_of(g);
    const std::size_t cg = cpgs.size();

    ws.log_x.resize(K);
    row_log_densities(ds.gene_values(g), p.mu, p.sigma2, ws.log_x);
    if (!all_finite(ws.log_x)) {
        throw NumericalError(
            fmt::format("non-finite expression density for gene '{}'", ds.gene(g).gene_id));
    }
    for (std::size_t k = 0; k < K; ++k) ws.log_x[k] += std::log(p.tau[k]);

    ws.log_y.resize(cg * L);
    for (std::size_t i = 0; i < cg; ++i) {
        const std::span<double> dst(ws.log_y.data() + i * L, L);
        row_log_densities(ds.cpg_values(cpgs[i]), p.lambda, p.rho2, dst);
        if (!all_finite(dst)) {
            throw NumericalError(
                fmt::format("non-finite methylation density for CpG '{}'", ds.cpg(cpgs[i]).cpg_id));
        }
    }

    ws.u.assign(warm.u.row(g).begin(), warm.u.row(g).end());
    ws.v.resize(cg * L);
    for (std::size_t i = 0; i < cg; ++i) {
        const auto row = warm.v.row(cpgs[i]);
        std::copy(row.begin(), row.end(), ws.v.begin() + static_cast<std::ptrdiff_t>(i * L));
    }
    ws.a.resize(std::max(K, L));
    ws.v_total.resize(L);

    std::size_t sweeps = 0;
    while (sweeps < opts.inner_max) {
        ++sweeps;
        double delta = 0.0;

        // sum_c sum_l v_cl log pi(l,k) = sum_l (sum_c v_cl) log pi(l,k)
        std::fill(ws.v_total.begin(), ws.v_total.end(), 0.0);
        for (std::size_t i = 0; i < cg; ++i) {
            for (std::size_t l = 0; l < L; ++l) ws.v_total[l] += ws.v[i * L + l];
        }
        const std::span<double> a(ws.a.data(), K);
        for (std::size_t k = 0; k < K; ++k) {
            double s = ws.log_x[k];
            for (std::size_t l = 0; l < L; ++l) s += soft_log_term(ws.v_total[l], log_pi(l, k));
            a[k] = s;
        }
        normalize_log_weights(a);
        for (std::size_t k = 0; k < K; ++k) {
            delta = std::max(delta, std::abs(a[k] - ws.u[k]));
            ws.u[k] = a[k];
        }

        const std::span<double> b(ws.a.data(), L);
        for (std::size_t i = 0; i < cg; ++i) {
            for (std::size_t l = 0; l < L; ++l) {
                double s = ws.log_y[i * L + l];
                for (std::size_t k = 0; k < K; ++k) s += soft_log_term(ws.u[k], log_pi(l, k));
                b[l] = s;
            }
            normalize_log_weights(b);
            for (std::size_t l = 0; l < L; ++l) {
                delta = std::max(delta, std::abs(b[l] - ws.v[i * L + l]));
                ws.v[i * L + l] = b[l];
            }
        }

        if (std::isnan(delta)) {
            throw NumericalError(fmt::format("responsibilities for gene '{}' became NaN",
                                             ds.gene(g).gene_id));
        }
        if (delta < opts.inner_tol) break;
    }

    std::copy(ws.u.begin(), ws.u.end(), out.u.row(g).begin());
    for (std::size_t i = 0; i < cg; ++i) {
        auto vrow = out.v.row(cpgs[i]);
        auto uvrow = out.uv.row(cpgs[i]);
        for (std::size_t l = 0; l < L; ++l) vrow[l] = ws.v[i * L + l];
        for (std::size_t k = 0; k < K; ++k) {
            for (std::size_t l = 0; l < L; ++l) uvrow[k * L + l] = ws.u[k] * vrow[l];
        }
    }
    return sweeps;
}

}  // namespace

Responsibilities e_step_fixed_point(const PairedDataset& ds, const JointParams& params,
                                    const Responsibilities& warm, const EStepOptions& opts,
                                    EStepStats* stats) {
    const std::size_t K = params.K;
    const std::size_t L = params.L;
    const std::size_t G = ds.n_genes();
    if (warm.u.rows() != G || warm.u.cols() != K || warm.v.rows() != ds.n_cpgs() ||
        warm.v.cols() != L) {
        throw ShapeError("warm-start responsibilities do not match the dataset and parameters");
    }

    Matrix log_pi(L, K);
    for (std::size_t i = 0; i < log_pi.data().size(); ++i) {
        log_pi.data()[i] = std::log(params.pi.data()[i]);
    }

    Responsibilities out;
    out.u = Matrix(G, K);
    out.v = Matrix(ds.n_cpgs(), L);
    out.uv = Matrix(ds.n_cpgs(), K * L);

    std::vector<std::size_t> sweeps(G, 0);
    parallel_for(G, opts.threads, [&](std::size_t g) {
        thread_local GeneWorkspace ws;  // scratch only; results go to `out`
        sweeps[g] = fixed_point_gene(ds, params, log_pi, warm, out, g, opts, ws);
    });

    if (stats != nullptr) {
        stats->max_inner_iters = 0;
        double total = 0.0;
        for (std::size_t s : sweeps) {
            stats->max_inner_iters = std::max(stats->max_inner_iters, s);
            total += static_cast<double>(s);
        }
        stats->mean_inner_iters = G == 0 ? 0.0 : total / static_cast<double>(G);
    }
    return out;
}

}  // namespace jointmix
