#include "jointmix/error.hpp"
#include "jointmix/joint_em.hpp"
#include "jointmix/kernels.hpp"
#include "jointmix/numeric.hpp"

#include <fmt/format.h>

#include <cmath>

namespace jointmix {

// Given gene component k the CpGs are independent, so
//   P(x_g, Y_g, k) = tau_k p(x_g|k) prod_c sum_l pi(l,k) p(y_c|l)
// and P(k, l_c | data) = P(k | data) * pi(l,k) p(y_c|l) / sum_l' pi(l',k) p(y_c|l').
GenePosterior exact_gene_posterior(const PairedDataset& ds, const JointParams& p, std::size_t g) {
    const std::size_t K = p.K;
    const std::size_t L = p.L;
    const auto cpgs = ds.cpgs_of(g);
    const std::size_t cg = cpgs.size();

    std::vector<double> log_joint(K);
    kernels::row_sq_dev(ds.gene_values(g), p.mu, log_joint);
    for (std::size_t k = 0; k < K; ++k) {
        const double dens = gaussian_row_log_density(log_joint[k], ds.n_patients(), p.sigma2);
        if (!std::isfinite(dens)) {
            throw NumericalError(
                fmt::format("non-finite expression density for gene '{}'", ds.gene(g).gene_id));
        }
        log_joint[k] = std::log(p.tau[k]) + dens;
    }

    // log pi(l,k) + log p(y_c|l), then its log-sum over l for each (c, k).
    Matrix cond(cg, K * L);
    Matrix cpg_given_gene(cg, K);
    std::vector<double> log_y(L);
    std::vector<double> terms(L);
    for (std::size_t i = 0; i < cg; ++i) {
        kernels::row_sq_dev(ds.cpg_values(cpgs[i]), p.lambda, log_y);
        for (double& d : log_y) {
            d = gaussian_row_log_density(d, ds.n_patients(), p.rho2);
            if (!std::isfinite(d)) {
                throw NumericalError(fmt::format("non-finite methylation density for CpG '{}'",
                                                 ds.cpg(cpgs[i]).cpg_id));
            }
        }
        for (std::size_t k = 0; k < K; ++k) {
            for (std::size_t l = 0; l < L; ++l) {
                terms[l] = std::log(p.pi(l, k)) + log_y[l];
                cond(i, k * L + l) = terms[l];
            }
            cpg_given_gene(i, k) = log_sum_exp(terms);
            log_joint[k] += cpg_given_gene(i, k);
        }
    }

    GenePosterior out;
    out.u = log_joint;
    out.log_marginal = normalize_log_weights(out.u);
    out.v = Matrix(cg, L);
    out.uv = Matrix(cg, K * L);
    for (std::size_t i = 0; i < cg; ++i) {
        for (std::size_t k = 0; k < K; ++k) {
            for (std::size_t l = 0; l < L; ++l) {
                const double joint =
                    out.u[k] * std::exp(cond(i, k * L + l) - cpg_given_gene(i, k));
                out.uv(i, k * L + l) = joint;
                out.v(i, l) += joint;
            }
        }
    }
    return out;
}

double observed_log_likelihood(const PairedDataset& ds, const JointParams& params) {
    double total = 0.0;
    for (std::size_t g = 0; g < ds.n_genes(); ++g) {
        total += exact_gene_posterior(ds, params, g).log_marginal;
    }
    return total;
}

}  // namespace jointmix
