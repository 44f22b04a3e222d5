#include "jointmix/error.hpp"
#include "jointmix/joint_em.hpp"

#include <fmt/format.h>

#include <cmath>

namespace jointmix {
namespace {

constexpr double kSimplexTol = 1e-10;

double max_abs(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

void JointParams::validate() const {
    if (K == 0 || L == 0) throw ParameterError("K and L must be positive");
    if (tau.size() != K || mu.size() != K || lambda.size() != L || pi.rows() != L ||
        pi.cols() != K) {
        throw ParameterError("parameter shapes do not match K and L");
    }
    double total = 0.0;
    for (double t : tau) {
        if (!(t >= 0.0)) throw ParameterError("tau has a negative or NaN entry");
        total += t;
    }
    if (std::abs(total - 1.0) > kSimplexTol) {
        throw ParameterError(fmt::format("tau sums to {}, not 1", total));
    }
    for (std::size_t k = 0; k < K; ++k) {
        double col = 0.0;
        for (std::size_t l = 0; l < L; ++l) {
            if (!(pi(l, k) >= 0.0)) throw ParameterError("pi has a negative or NaN entry");
            col += pi(l, k);
        }
        if (std::abs(col - 1.0) > kSimplexTol) {
            throw ParameterError(fmt::format("pi column {} sums to {}, not 1", k + 1, col));
        }
    }
    if (!(sigma2 > 0.0) || !(rho2 > 0.0)) throw ParameterError("variances must be positive");
}

double JointParams::max_abs_diff(const JointParams& o) const {
    double m = max_abs(tau, o.tau);
    m = std::max(m, max_abs(pi.data(), o.pi.data()));
    m = std::max(m, max_abs(mu, o.mu));
    m = std::max(m, std::abs(sigma2 - o.sigma2));
    m = std::max(m, max_abs(lambda, o.lambda));
    m = std::max(m, std::abs(rho2 - o.rho2));
    return m;
}

void set_product_joint(const PairedDataset& ds, Responsibilities& resp) {
    const std::size_t K = resp.u.cols();
    const std::size_t L = resp.v.cols();
    resp.uv = Matrix(ds.n_cpgs(), K * L);
    for (std::size_t c = 0; c < ds.n_cpgs(); ++c) {
        const std::size_t g = ds.gene_of(c);
        for (std::size_t k = 0; k < K; ++k) {
            for (std::size_t l = 0; l < L; ++l) resp.uv(c, k * L + l) = resp.u(g, k) * resp.v(c, l);
        }
    }
}

MapAssignment map_assign(const Matrix& resp) {
    MapAssignment out;
    out.labels.resize(resp.rows());
    out.uncertainty.resize(resp.rows());
    for (std::size_t r = 0; r < resp.rows(); ++r) {
        const auto row = resp.row(r);
        std::size_t best = 0;
        for (std::size_t j = 1; j < row.size(); ++j) {
            if (row[j] > row[best]) best = j;
        }
        out.labels[r] = best;
        out.uncertainty[r] = row.empty() ? 0.0 : 1.0 - row[best];
    }
    return out;
}

Matrix gene_given_cpg(const JointParams& params) {
    Matrix out(params.K, params.L);
    for (std::size_t l = 0; l < params.L; ++l) {
        double mass = 0.0;
        for (std::size_t k = 0; k < params.K; ++k) mass += params.tau[k] * params.pi(l, k);
        if (!(mass > 0.0)) {
            throw NumericalError(
                fmt::format("CpG component {} has zero marginal mass; column undefined", l + 1));
        }
        for (std::size_t k = 0; k < params.K; ++k) {
            out(k, l) = params.tau[k] * params.pi(l, k) / mass;
        }
    }
    return out;
}

}  // namespace jointmix
