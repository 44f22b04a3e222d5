#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace jointmix {

struct GeneRecord {
    std::string gene_id;
    std::string chromosome;
    std::vector<double> values;  // one per patient

    friend bool operator==(const GeneRecord&, const GeneRecord&) = default;
};

struct CpgRecord {
    std::string cpg_id;
    std::string gene_id;
    std::string chromosome;
    std::vector<double> values;  // one per patient

    friend bool operator==(const CpgRecord&, const CpgRecord&) = default;
};

// What to do with a CpG whose parent gene is missing or sits on another
// chromosome: reject the whole dataset, or drop the CpG with a warning.
enum class MappingMode { strict, lenient };

// Paired gene-level and CpG-level values over the same N patients, with the
// many-to-one CpG -> gene mapping. Immutable once constructed.
class PairedDataset {
public:
    PairedDataset() = default;

    // Validates and indexes the records. Throws ShapeError for value vectors
    // of the wrong length, DuplicateError for repeated ids, MappingError for
    // orphan CpGs in strict mode.
    PairedDataset(std::vector<std::string> patients, std::vector<GeneRecord> genes,
                  std::vector<CpgRecord> cpgs, MappingMode mode = MappingMode::strict);

    const std::vector<std::string>& patients() const noexcept { return patients_; }
    std::size_t n_patients() const noexcept { return patients_.size(); }
    std::size_t n_genes() const noexcept { return genes_.size(); }
    std::size_t n_cpgs() const noexcept { return cpgs_.size(); }

    const std::vector<GeneRecord>& genes() const noexcept { return genes_; }
    const std::vector<CpgRecord>& cpgs() const noexcept { return cpgs_; }
    const GeneRecord& gene(std::size_t g) const { return genes_[g]; }
    const CpgRecord& cpg(std::size_t c) const { return cpgs_[c]; }

    std::span<const double> gene_values(std::size_t g) const { return genes_[g].values; }
    std::span<const double> cpg_values(std::size_t c) const { return cpgs_[c].values; }

    // Indices of gene g's CpGs, in input order. May be empty.
    std::span<const std::size_t> cpgs_of(std::size_t g) const { return cpgs_of_gene_[g]; }
    std::size_t gene_of(std::size_t c) const { return gene_of_cpg_[c]; }

    // CpGs dropped in lenient mode.
    std::size_t dropped_cpgs() const noexcept { return dropped_; }

    // Distinct chromosome labels in order of first appearance among genes.
    std::vector<std::string> chromosomes() const;

private:
    std::vector<std::string> patients_;
    std::vector<GeneRecord> genes_;
    std::vector<CpgRecord> cpgs_;
    std::vector<std::vector<std::size_t>> cpgs_of_gene_;
    std::vector<std::size_t> gene_of_cpg_;
    std::size_t dropped_ = 0;
};

struct ExpressionTable {
    std::vector<std::string> patients;
    std::vector<GeneRecord> genes;
};

struct MethylationTable {
    std::vector<std::string> patients;
    std::vector<CpgRecord> cpgs;
};

// Header: gene_id, chromosome, patient columns.
ExpressionTable read_expression_tsv(const std::filesystem::path& path);
// Header: cpg_id, gene_id, chromosome, patient columns.
MethylationTable read_methylation_tsv(const std::filesystem::path& path);

void write_expression_tsv(const std::filesystem::path& path, const ExpressionTable& table);
void write_methylation_tsv(const std::filesystem::path& path, const MethylationTable& table);

// Reorders `table`'s value columns to follow `patients`. FormatError naming the
// first missing or unexpected column if the two header sets differ.
void align_patients(MethylationTable& table, const std::vector<std::string>& patients);
void align_patients(ExpressionTable& table, const std::vector<std::string>& patients);

PairedDataset load_paired_dataset(const std::filesystem::path& expression_path,
                                  const std::filesystem::path& methylation_path,
                                  MappingMode mode = MappingMode::strict);

// One sub-dataset per chromosome (first-appearance order); each keeps its
// genes and their CpGs in input order.
std::vector<PairedDataset> split_by_chromosome(const PairedDataset& ds);

}  // namespace jointmix
