#include "jointmix/preprocess.hpp"

#include "jointmix/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace jointmix {
namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeError(fmt::format("{}: shapes {}x{} and {}x{} differ", what, a.rows(), a.cols(),
                                     b.rows(), b.cols()));
    }
}

void check_count(double v, std::size_t row) {
    if (v < 0.0) throw DomainError(fmt::format("negative count {} in row {}", v, row + 1));
    if (v != std::floor(v)) {
        throw DomainError(fmt::format("non-integral count {} in row {}", v, row + 1));
    }
}

template <typename Rows, typename Get>
Matrix to_matrix(const Rows& rows, std::size_t n, Get get) {
    Matrix m(rows.size(), n);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& v = get(rows[r]);
        std::copy(v.begin(), v.end(), m.row(r).begin());
    }
    return m;
}

template <typename Record>
std::vector<Record> align_rows(std::vector<Record> b, const std::vector<Record>& a,
                               auto id_of, const char* layer) {
    if (a.size() != b.size()) {
        throw FormatError(fmt::format("{}: condition A has {} rows, condition B has {}", layer,
                                      a.size(), b.size()));
    }
    std::unordered_map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < b.size(); ++i) pos.emplace(id_of(b[i]), i);
    std::vector<Record> out;
    out.reserve(b.size());
    for (const auto& rec : a) {
        const auto it = pos.find(id_of(rec));
        if (it == pos.end()) {
            throw FormatError(
                fmt::format("{}: '{}' missing from condition B", layer, id_of(rec)));
        }
        out.push_back(std::move(b[it->second]));
    }
    return out;
}

}  // namespace

std::vector<std::size_t> filter_low_counts(const Matrix& counts_a, const Matrix& counts_b,
                                           long threshold) {
    require_same_shape(counts_a, counts_b, "filter_low_counts");
    std::vector<std::size_t> kept;
    for (std::size_t g = 0; g < counts_a.rows(); ++g) {
        double total = 0.0;
        for (std::size_t n = 0; n < counts_a.cols(); ++n) {
            check_count(counts_a(g, n), g);
            check_count(counts_b(g, n), g);
            total += counts_a(g, n) + counts_b(g, n);
        }
        if (total > static_cast<double>(threshold)) kept.push_back(g);
    }
    return kept;
}

std::vector<double> library_sizes(const Matrix& counts) {
    std::vector<double> libs(counts.cols(), 0.0);
    for (std::size_t g = 0; g < counts.rows(); ++g) {
        for (std::size_t n = 0; n < counts.cols(); ++n) libs[n] += counts(g, n);
    }
    for (std::size_t n = 0; n < libs.size(); ++n) {
        if (!(libs[n] > 0.0)) {
            throw DomainError(fmt::format("library size of sample {} is zero", n + 1));
        }
    }
    return libs;
}

Matrix counts_to_logcpm(const Matrix& counts, std::span<const double> libs, double pseudocount) {
    if (libs.size() != counts.cols()) {
        throw ShapeError(fmt::format("{} library sizes for {} samples", libs.size(), counts.cols()));
    }
    for (std::size_t n = 0; n < libs.size(); ++n) {
        if (!(libs[n] > 0.0)) {
            throw DomainError(fmt::format("library size of sample {} is not positive", n + 1));
        }
    }
    Matrix out(counts.rows(), counts.cols());
    for (std::size_t g = 0; g < counts.rows(); ++g) {
        for (std::size_t n = 0; n < counts.cols(); ++n) {
            out(g, n) = std::log2(counts(g, n) / libs[n] * 1e6 + pseudocount);
        }
    }
    return out;
}

Matrix logfold_change(const Matrix& logcpm_a, const Matrix& logcpm_b) {
    require_same_shape(logcpm_a, logcpm_b, "logfold_change");
    Matrix out(logcpm_a.rows(), logcpm_a.cols());
    for (std::size_t i = 0; i < out.data().size(); ++i) {
        out.data()[i] = logcpm_b.data()[i] - logcpm_a.data()[i];
    }
    return out;
}

double beta_to_mvalue(double beta, double eps) {
    if (!(beta >= 0.0 && beta <= 1.0)) {
        throw DomainError(fmt::format("beta value {} outside [0, 1]", beta));
    }
    const double b = std::clamp(beta, eps, 1.0 - eps);
    return std::log2(b / (1.0 - b));
}

Matrix betas_to_mvalues(const Matrix& betas, double eps) {
    Matrix out(betas.rows(), betas.cols());
    for (std::size_t i = 0; i < out.data().size(); ++i) {
        out.data()[i] = beta_to_mvalue(betas.data()[i], eps);
    }
    return out;
}

Matrix mvalue_difference(const Matrix& m_a, const Matrix& m_b) {
    require_same_shape(m_a, m_b, "mvalue_difference");
    Matrix out(m_a.rows(), m_a.cols());
    for (std::size_t i = 0; i < out.data().size(); ++i) {
        out.data()[i] = m_b.data()[i] - m_a.data()[i];
    }
    return out;
}

PreprocessedTables preprocess(RawPairedInput raw, const PreprocessOptions& opts) {
    const auto& patients = raw.expression_a.patients;
    align_patients(raw.expression_b, patients);
    align_patients(raw.methylation_a, patients);
    align_patients(raw.methylation_b, patients);
    raw.expression_b.genes = align_rows(
        std::move(raw.expression_b.genes), raw.expression_a.genes,
        [](const GeneRecord& r) -> const std::string& { return r.gene_id; }, "expression");
    raw.methylation_b.cpgs = align_rows(
        std::move(raw.methylation_b.cpgs), raw.methylation_a.cpgs,
        [](const CpgRecord& r) -> const std::string& { return r.cpg_id; }, "methylation");

    const std::size_t n = patients.size();
    auto values = [](const auto& rec) -> const std::vector<double>& { return rec.values; };

    const Matrix counts_a = to_matrix(raw.expression_a.genes, n, values);
    const Matrix counts_b = to_matrix(raw.expression_b.genes, n, values);
    const auto kept = filter_low_counts(counts_a, counts_b, opts.count_threshold);

    Matrix kept_a(kept.size(), n);
    Matrix kept_b(kept.size(), n);
    for (std::size_t i = 0; i < kept.size(); ++i) {
        std::copy_n(counts_a.row(kept[i]).begin(), n, kept_a.row(i).begin());
        std::copy_n(counts_b.row(kept[i]).begin(), n, kept_b.row(i).begin());
    }
    const auto libs_a = library_sizes(kept_a);
    const auto libs_b = library_sizes(kept_b);
    const Matrix lfc = logfold_change(counts_to_logcpm(kept_a, libs_a, opts.pseudocount),
                                      counts_to_logcpm(kept_b, libs_b, opts.pseudocount));

    PreprocessedTables out;
    out.expression.patients = patients;
    out.genes_filtered = raw.expression_a.genes.size() - kept.size();
    std::unordered_set<std::string> kept_ids;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        const auto& rec = raw.expression_a.genes[kept[i]];
        kept_ids.insert(rec.gene_id);
        const auto row = lfc.row(i);
        out.expression.genes.push_back({rec.gene_id, rec.chromosome, {row.begin(), row.end()}});
    }

    const Matrix ydiff =
        mvalue_difference(betas_to_mvalues(to_matrix(raw.methylation_a.cpgs, n, values), opts.beta_eps),
                          betas_to_mvalues(to_matrix(raw.methylation_b.cpgs, n, values), opts.beta_eps));
    out.methylation.patients = patients;
    std::unordered_set<std::string> all_gene_ids;
    for (const auto& g : raw.expression_a.genes) all_gene_ids.insert(g.gene_id);
    for (std::size_t c = 0; c < raw.methylation_a.cpgs.size(); ++c) {
        const auto& rec = raw.methylation_a.cpgs[c];
        // CpGs of unknown genes are left in for the dataset's mapping check.
        if (all_gene_ids.contains(rec.gene_id) && !kept_ids.contains(rec.gene_id)) {
            ++out.cpgs_of_filtered_genes;
            continue;
        }
        const auto row = ydiff.row(c);
        out.methylation.cpgs.push_back(
            {rec.cpg_id, rec.gene_id, rec.chromosome, {row.begin(), row.end()}});
    }
    return out;
}

PairedDataset to_dataset(PreprocessedTables tables, MappingMode mode) {
    return PairedDataset(std::move(tables.expression.patients), std::move(tables.expression.genes),
                         std::move(tables.methylation.cpgs), mode);
}

}  // namespace jointmix
