#include "jointmix/joint_em.hpp"
#include "jointmix/log.hpp"
#include "mixture_moments.hpp"

namespace jointmix {

JointParams m_step(const PairedDataset& ds, const Responsibilities& resp,
                   const MStepOptions& opts) {
    const std::size_t G = ds.n_genes();
    const std::size_t C = ds.n_cpgs();
    const std::size_t K = resp.u.cols();
    const std::size_t L = resp.v.cols();
    const std::size_t N = ds.n_patients();

    const auto genes = detail::weighted_moments(
        G, N, [&](std::size_t g) { return ds.gene_values(g); }, resp.u, ClusterLayer::gene,
        kEmptyClusterMass, kVarianceFloor);
    const auto cpgs = detail::weighted_moments(
        C, N, [&](std::size_t c) { return ds.cpg_values(c); }, resp.v, ClusterLayer::cpg,
        kEmptyClusterMass, kVarianceFloor);

    JointParams p;
    p.K = K;
    p.L = L;
    p.tau.resize(K);
    for (std::size_t k = 0; k < K; ++k) p.tau[k] = genes.mass[k] / static_cast<double>(G);
    p.mu = genes.mean;
    // sum_k tau_k sigma_k^2
    p.sigma2 = genes.pooled_var;
    p.lambda = cpgs.mean;
    // sum_l (sum_gc v_gcl / C) rho_l^2, the exact maximiser for a shared rho^2.
    p.rho2 = cpgs.pooled_var;

    p.pi = Matrix(L, K);
    if (opts.pin_pi_equal) {
        for (std::size_t l = 0; l < L; ++l) {
            const double share = cpgs.mass[l] / static_cast<double>(C);
            for (std::size_t k = 0; k < K; ++k) p.pi(l, k) = share;
        }
        return p;
    }

    std::vector<double> denom(K, 0.0);
    for (std::size_t g = 0; g < G; ++g) {
        const double cg = static_cast<double>(ds.cpgs_of(g).size());
        for (std::size_t k = 0; k < K; ++k) denom[k] += resp.u(g, k) * cg;
    }
    for (std::size_t c = 0; c < C; ++c) {
        for (std::size_t k = 0; k < K; ++k) {
            for (std::size_t l = 0; l < L; ++l) p.pi(l, k) += resp.uv(c, k * L + l);
        }
    }
    for (std::size_t k = 0; k < K; ++k) {
        if (denom[k] > 0.0) {
            for (std::size_t l = 0; l < L; ++l) p.pi(l, k) /= denom[k];
        } else {
            log::warn("gene component {} carries no CpGs; pi column reset to uniform", k + 1);
            for (std::size_t l = 0; l < L; ++l) p.pi(l, k) = 1.0 / static_cast<double>(L);
        }
    }
    return p;
}

}  // namespace jointmix
