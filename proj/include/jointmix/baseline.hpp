#pragma once

// Independent univariate-per-dimension Gaussian mixture with one pooled
// variance shared by all components. This is the no-coupling reference for
// the joint model: fitting genes and CpGs separately with it is what the joint
// model reduces to when every column of pi is the same.

#include "jointmix/dataset.hpp"
#include "jointmix/joint_em.hpp"
#include "jointmix/matrix.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace jointmix {

struct IndepParams {
    std::vector<double> weights;
    std::vector<double> means;
    double variance = 1.0;
};

struct IndependentOptions {
    std::size_t K = 3;
    double quantile = 0.10;
    double tol = 1e-5;
    std::size_t max_iter = 500;
    bool relabel = true;
};

struct IndependentFit {
    IndepParams params;
    Matrix resp;  // M x K
    MapAssignment map;
    std::size_t n_iters = 0;
    bool converged = false;
};

// EM on the rows of `values` (M x N), with the same quantile initialisation,
// stopping rule and MAP conventions as the joint fit. ParameterError if
// M < K; DegenerateClusterError if a component empties.
IndependentFit fit_independent(const Matrix& values, const IndependentOptions& opts = {});

Matrix gene_matrix(const PairedDataset& ds);
Matrix cpg_matrix(const PairedDataset& ds);

// Adjusted Rand index between two labelings of the same items. Returns 1
// when both labelings induce the same partition, including the degenerate
// case where the index is 0/0. ShapeError on length mismatch.
double compare_partitions(std::span<const std::size_t> a, std::span<const std::size_t> b);

}  // namespace jointmix
