#pragma once

// Raw two-condition inputs -> model inputs. Expression: low-count filter,
// total-count library sizes, log2-CPM, per-patient log-fold change B - A.
// Methylation: beta -> M-value (log2 logit), per-patient difference B - A.

#include "jointmix/dataset.hpp"
#include "jointmix/matrix.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace jointmix {

struct PreprocessOptions {
    double pseudocount = 0.5;
    double beta_eps = 1e-6;
    long count_threshold = 5;
};

// Genes kept: sum over patients of countsA + countsB strictly above threshold.
// DomainError on negative or non-integral counts.
std::vector<std::size_t> filter_low_counts(const Matrix& counts_a, const Matrix& counts_b,
                                           long threshold = 5);

// Column sums. DomainError if any is not strictly positive.
std::vector<double> library_sizes(const Matrix& counts);

// log2(count / lib * 1e6 + pseudocount), lib indexed by column.
Matrix counts_to_logcpm(const Matrix& counts, std::span<const double> libs,
                        double pseudocount = 0.5);

// B - A elementwise. ShapeError on mismatch.
Matrix logfold_change(const Matrix& logcpm_a, const Matrix& logcpm_b);

// log2(b / (1 - b)) after clamping b to [eps, 1 - eps]. DomainError outside [0, 1].
double beta_to_mvalue(double beta, double eps = 1e-6);

Matrix betas_to_mvalues(const Matrix& betas, double eps = 1e-6);

// B - A elementwise. ShapeError on mismatch.
Matrix mvalue_difference(const Matrix& m_a, const Matrix& m_b);

struct RawPairedInput {
    ExpressionTable expression_a;
    ExpressionTable expression_b;
    MethylationTable methylation_a;
    MethylationTable methylation_b;
};

struct PreprocessedTables {
    ExpressionTable expression;   // log-fold changes
    MethylationTable methylation;  // M-value differences
    std::size_t genes_filtered = 0;
    std::size_t cpgs_of_filtered_genes = 0;
};

// Aligns patients by column name and B rows to A rows by id (FormatError if
// the row sets differ), then applies the full transform chain. CpGs whose gene
// fails the count filter are removed along with it.
PreprocessedTables preprocess(RawPairedInput raw, const PreprocessOptions& opts = {});

PairedDataset to_dataset(PreprocessedTables tables, MappingMode mode = MappingMode::strict);

}  // namespace jointmix
