#include "jointmix/error.hpp"
#include "jointmix/joint_em.hpp"
#include "jointmix/log.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>

namespace jointmix {
namespace {

std::vector<std::size_t> ascending_order(const std::vector<double>& values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    return order;
}

Matrix permute_columns(const Matrix& m, const std::vector<std::size_t>& order) {
    Matrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t j = 0; j < order.size(); ++j) out(r, j) = m(r, order[j]);
    }
    return out;
}

// Renumbers components so that mu and lambda are ascending.
void relabel(JointParams& p, Responsibilities& resp) {
    const auto gk = ascending_order(p.mu);
    const auto cl = ascending_order(p.lambda);
    const std::size_t K = p.K;
    const std::size_t L = p.L;

    JointParams q = p;
    Matrix uv(resp.uv.rows(), resp.uv.cols());
    for (std::size_t k = 0; k < K; ++k) {
        q.tau[k] = p.tau[gk[k]];
        q.mu[k] = p.mu[gk[k]];
        for (std::size_t l = 0; l < L; ++l) q.pi(l, k) = p.pi(cl[l], gk[k]);
    }
    for (std::size_t l = 0; l < L; ++l) q.lambda[l] = p.lambda[cl[l]];
    for (std::size_t c = 0; c < uv.rows(); ++c) {
        for (std::size_t k = 0; k < K; ++k) {
            for (std::size_t l = 0; l < L; ++l) uv(c, k * L + l) = resp.uv(c, gk[k] * L + cl[l]);
        }
    }
    p = std::move(q);
    resp.u = permute_columns(resp.u, gk);
    resp.v = permute_columns(resp.v, cl);
    resp.uv = std::move(uv);
}

template <typename Step>
auto at_iteration(std::size_t it, Step&& step) -> decltype(step()) {
    try {
        return step();
    } catch (const DegenerateClusterError& e) {
        throw DegenerateClusterError(e.layer(), e.index(),
                                     fmt::format("EM iteration {}: {}", it, e.what()), it);
    } catch (const NumericalError& e) {
        throw NumericalError(fmt::format("EM iteration {}: {}", it, e.what()), it);
    }
}

}  // namespace

FitResult fit(const PairedDataset& ds, const FitOptions& opts) {
    if (ds.n_genes() < opts.K) {
        throw ParameterError(
            fmt::format("{} genes cannot fill {} gene components", ds.n_genes(), opts.K));
    }
    if (ds.n_cpgs() < opts.L) {
        throw ParameterError(
            fmt::format("{} CpGs cannot fill {} CpG components", ds.n_cpgs(), opts.L));
    }
    return fit_from(ds, initialize_quantile(ds, opts.K, opts.L, opts.quantile), opts);
}

FitResult fit_from(const PairedDataset& ds, Responsibilities init, const FitOptions& opts) {
    const MStepOptions mopts{opts.pin_pi_equal};
    const EStepOptions eopts{opts.inner_tol, opts.inner_max, opts.threads};

    FitResult r;
    r.resp = std::move(init);
    r.params = at_iteration(0, [&] { return m_step(ds, r.resp, mopts); });

    for (std::size_t it = 1; it <= opts.outer_max; ++it) {
        EStepStats stats;
        r.resp = at_iteration(it, [&] { return e_step_fixed_point(ds, r.params, r.resp, eopts, &stats); });
        JointParams next = at_iteration(it, [&] { return m_step(ds, r.resp, mopts); });

        const double change = next.max_abs_diff(r.params);
        r.params = std::move(next);
        r.n_outer_iters = it;
        r.param_change_trace.push_back(change);
        r.mean_inner_iters.push_back(stats.mean_inner_iters);
        log::debug("iteration {}: max parameter change {:.3e}, mean inner sweeps {:.2f}", it,
                   change, stats.mean_inner_iters);
        if (change < opts.outer_tol) {
            r.converged = true;
            break;
        }
    }
    if (!r.converged && opts.outer_max > 0) {
        log::warn("EM stopped after {} iterations without converging", opts.outer_max);
    }

    if (opts.relabel) relabel(r.params, r.resp);
    r.gene_map = map_assign(r.resp.u);
    r.cpg_map = map_assign(r.resp.v);
    return r;
}

}  // namespace jointmix
