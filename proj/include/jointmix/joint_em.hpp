#pragma once

// Nested two-level Gaussian mixture over genes (K components, values x_g)
// and their CpG sites (L components, values y_gc). A CpG's component depends
// on its gene's component through the L x K matrix pi(l, k) = P(l | k).
// Variances are pooled across components within each layer.

#include "jointmix/dataset.hpp"
#include "jointmix/matrix.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace jointmix {

struct JointParams {
    std::size_t K = 0;
    std::size_t L = 0;
    std::vector<double> tau;     // K, gene mixing weights
    Matrix pi;                   // L x K, each column sums to 1
    std::vector<double> mu;      // K, gene component means
    double sigma2 = 1.0;         // pooled gene variance
    std::vector<double> lambda;  // L, CpG component means
    double rho2 = 1.0;           // pooled CpG variance

    // ParameterError if a simplex constraint or positivity is violated.
    void validate() const;

    // Largest absolute difference over all entries of (tau, pi, mu, sigma2,
    // lambda, rho2). Both sides must have the same K and L.
    double max_abs_diff(const JointParams& other) const;
};

// Posterior expectations of the latent indicators.
struct Responsibilities {
    Matrix u;   // G x K
    Matrix v;   // C x L
    Matrix uv;  // C x (K * L); uv(c, k * L + l) = E[u_gk v_gcl], g the parent of c

    double joint(std::size_t c, std::size_t k, std::size_t l) const {
        return uv(c, k * v.cols() + l);
    }
};

// Fills uv with the product u(g(c), k) * v(c, l).
void set_product_joint(const PairedDataset& ds, Responsibilities& resp);

// Hard assignment from per-row means. With k == 3 the bottom q fraction of
// rows (at least one) goes to component 0, the top q fraction to component 2
// and the rest to component 1. Any other k splits the ranks into k equal
// bins. Ties keep input order. ParameterError if q is not in (0, 0.5) or
// there are fewer rows than components.
std::vector<std::size_t> quantile_labels(std::span<const double> means, std::size_t k,
                                         double q = 0.10);

// One-hot U and V from quantile_labels on per-gene and per-CpG means.
Responsibilities initialize_quantile(const PairedDataset& ds, std::size_t K, std::size_t L,
                                     double q = 0.10);

struct MStepOptions {
    // Test hook: replace every column of pi by the CpG component shares,
    // which makes the two layers independent.
    bool pin_pi_equal = false;
};

inline constexpr double kVarianceFloor = 1e-8;
inline constexpr double kEmptyClusterMass = 1e-8;

// Closed-form maximiser of the expected complete-data log-likelihood.
// DegenerateClusterError when a component's total responsibility is below
// kEmptyClusterMass. A pi column whose denominator sum_g u_gk C_g is zero is
// reset to uniform with a warning.
JointParams m_step(const PairedDataset& ds, const Responsibilities& resp,
                   const MStepOptions& opts = {});

struct EStepOptions {
    double inner_tol = 1e-6;
    std::size_t inner_max = 50;
    unsigned threads = 1;
};

struct EStepStats {
    std::size_t max_inner_iters = 0;
    double mean_inner_iters = 0.0;
};

// Approximate E-step. For each gene, alternates
//   u_k  propto tau_k p(x_g | k) prod_c prod_l pi(l, k)^v_cl
//   v_cl propto p(y_c | l) prod_k pi(l, k)^u_k
// in log space, starting from `warm`, until the largest change is below
// inner_tol or inner_max sweeps were made. uv is set to the product u * v.
// NumericalError naming the gene if a density is not finite.
Responsibilities e_step_fixed_point(const PairedDataset& ds, const JointParams& params,
                                    const Responsibilities& warm, const EStepOptions& opts = {},
                                    EStepStats* stats = nullptr);

// Exact posterior of one gene's latent indicators, obtained by summing the
// CpG indicators out analytically.
struct GenePosterior {
    std::vector<double> u;  // K
    Matrix v;               // C_g x L
    Matrix uv;              // C_g x (K * L), exact joint P(u_k, v_cl | data)
    double log_marginal = 0.0;
};

GenePosterior exact_gene_posterior(const PairedDataset& ds, const JointParams& params,
                                   std::size_t g);

// Observed-data log-likelihood under exact per-gene marginalisation.
double observed_log_likelihood(const PairedDataset& ds, const JointParams& params);

struct MapAssignment {
    std::vector<std::size_t> labels;  // zero-based, lowest index wins ties
    std::vector<double> uncertainty;  // 1 - max posterior
};

MapAssignment map_assign(const Matrix& resp);

// P(gene component k | CpG component l) = tau_k pi(l,k) / sum_k' tau_k' pi(l,k').
// Returned as K x L; each column sums to 1. NumericalError if a CpG component
// has zero marginal mass.
Matrix gene_given_cpg(const JointParams& params);

struct FitOptions {
    std::size_t K = 3;
    std::size_t L = 3;
    double quantile = 0.10;
    double outer_tol = 1e-5;
    std::size_t outer_max = 500;
    double inner_tol = 1e-6;
    std::size_t inner_max = 50;
    unsigned threads = 1;
    // Sort components by mean after fitting (E-, E0, E+ / M-, M0, M+ for 3).
    bool relabel = true;
    bool pin_pi_equal = false;
};

struct FitResult {
    JointParams params;
    Responsibilities resp;
    MapAssignment gene_map;
    MapAssignment cpg_map;
    std::size_t n_outer_iters = 0;
    bool converged = false;
    std::vector<double> param_change_trace;
    std::vector<double> mean_inner_iters;
};

// Quantile initialisation, M-step, then alternating E/M steps until the
// largest parameter change is below outer_tol. Deterministic; the thread
// count does not affect the result.
FitResult fit(const PairedDataset& ds, const FitOptions& opts = {});

// Same, starting from a caller-supplied initial assignment.
FitResult fit_from(const PairedDataset& ds, Responsibilities init, const FitOptions& opts = {});

}  // namespace jointmix
