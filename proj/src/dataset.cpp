#include "jointmix/dataset.hpp"

#include "jointmix/error.hpp"
#include "jointmix/log.hpp"
#include "jointmix/tsv.hpp"

#include <fmt/format.h>

#include <fstream>
#include <unordered_map>
#include <unordered_set>

namespace jointmix {

PairedDataset::PairedDataset(std::vector<std::string> patients, std::vector<GeneRecord> genes,
                             std::vector<CpgRecord> cpgs, MappingMode mode)
    : patients_(std::move(patients)), genes_(std::move(genes)) {
    if (patients_.empty()) throw ShapeError("dataset needs at least one patient");
    const std::size_t n = patients_.size();

    std::unordered_map<std::string, std::size_t> gene_index;
    gene_index.reserve(genes_.size());
    for (std::size_t g = 0; g < genes_.size(); ++g) {
        const auto& rec = genes_[g];
        if (rec.values.size() != n) {
            throw ShapeError(fmt::format("gene '{}' has {} values, expected {}", rec.gene_id,
                                         rec.values.size(), n));
        }
        if (!gene_index.emplace(rec.gene_id, g).second) {
            throw DuplicateError(fmt::format("duplicate gene_id '{}'", rec.gene_id));
        }
    }

    cpgs_of_gene_.resize(genes_.size());
    std::unordered_set<std::string> seen_cpgs;
    cpgs_.reserve(cpgs.size());
    for (auto& rec : cpgs) {
        if (rec.values.size() != n) {
            throw ShapeError(fmt::format("CpG '{}' has {} values, expected {}", rec.cpg_id,
                                         rec.values.size(), n));
        }
        if (!seen_cpgs.insert(rec.cpg_id).second) {
            throw DuplicateError(fmt::format("duplicate cpg_id '{}'", rec.cpg_id));
        }
        const auto it = gene_index.find(rec.gene_id);
        std::string problem;
        if (it == gene_index.end()) {
            problem = fmt::format("CpG '{}' references unknown gene '{}'", rec.cpg_id, rec.gene_id);
        } else if (genes_[it->second].chromosome != rec.chromosome) {
            problem = fmt::format("CpG '{}' is on chromosome '{}' but gene '{}' is on '{}'",
                                  rec.cpg_id, rec.chromosome, rec.gene_id,
                                  genes_[it->second].chromosome);
        }
        if (!problem.empty()) {
            if (mode == MappingMode::strict) throw MappingError(problem);
            log::warn("{}; dropped", problem);
            ++dropped_;
            continue;
        }
        cpgs_of_gene_[it->second].push_back(cpgs_.size());
        gene_of_cpg_.push_back(it->second);
        cpgs_.push_back(std::move(rec));
    }
}

std::vector<std::string> PairedDataset::chromosomes() const {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    for (const auto& g : genes_) {
        if (seen.insert(g.chromosome).second) out.push_back(g.chromosome);
    }
    return out;
}

namespace {

std::vector<std::string> patient_columns(const tsv::Table& t, std::size_t n_leading) {
    return {t.header.begin() + static_cast<std::ptrdiff_t>(n_leading), t.header.end()};
}

void check_leading(const tsv::Table& t, const std::vector<std::string>& expected,
                   const std::filesystem::path& path) {
    if (t.header.size() <= expected.size()) {
        throw FormatError(fmt::format("'{}': header has no patient columns", path.string()));
    }
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (t.header[i] != expected[i]) {
            throw FormatError(fmt::format("'{}': column {} must be '{}', found '{}'",
                                          path.string(), i + 1, expected[i], t.header[i]));
        }
    }
    std::unordered_set<std::string> seen;
    for (std::size_t i = expected.size(); i < t.header.size(); ++i) {
        if (!seen.insert(t.header[i]).second) {
            throw FormatError(
                fmt::format("'{}': duplicate patient column '{}'", path.string(), t.header[i]));
        }
    }
}

std::vector<double> parse_values(const std::vector<std::string>& row, std::size_t n_leading,
                                 const std::filesystem::path& path) {
    std::vector<double> v;
    v.reserve(row.size() - n_leading);
    for (std::size_t i = n_leading; i < row.size(); ++i) {
        v.push_back(tsv::parse_double(row[i], fmt::format("{} row '{}'", path.string(), row[0])));
    }
    return v;
}

// Permutation taking `from` column order to `to` column order.
std::vector<std::size_t> column_permutation(const std::vector<std::string>& from,
                                            const std::vector<std::string>& to) {
    if (from.size() != to.size()) {
        throw FormatError(fmt::format("patient column count mismatch: {} vs {}", from.size(),
                                      to.size()));
    }
    std::unordered_map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < from.size(); ++i) pos.emplace(from[i], i);
    std::vector<std::size_t> perm(to.size());
    for (std::size_t i = 0; i < to.size(); ++i) {
        const auto it = pos.find(to[i]);
        if (it == pos.end()) throw FormatError(fmt::format("missing patient column '{}'", to[i]));
        perm[i] = it->second;
    }
    return perm;
}

void permute(std::vector<double>& v, const std::vector<std::size_t>& perm) {
    std::vector<double> out(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) out[i] = v[perm[i]];
    v = std::move(out);
}

void write_header(std::ofstream& out, std::initializer_list<const char*> leading,
                  const std::vector<std::string>& patients) {
    bool first = true;
    for (const char* h : leading) {
        out << (first ? "" : "\t") << h;
        first = false;
    }
    for (const auto& p : patients) out << '\t' << p;
    out << '\n';
}

void write_values(std::ofstream& out, const std::vector<double>& values) {
    for (double v : values) out << '\t' << tsv::format_double(v);
    out << '\n';
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(fmt::format("cannot write '{}'", path.string()));
    return out;
}

}  // namespace

ExpressionTable read_expression_tsv(const std::filesystem::path& path) {
    const auto t = tsv::read(path);
    check_leading(t, {"gene_id", "chromosome"}, path);
    ExpressionTable out;
    out.patients = patient_columns(t, 2);
    out.genes.reserve(t.rows.size());
    for (const auto& row : t.rows) {
        out.genes.push_back({row[0], row[1], parse_values(row, 2, path)});
    }
    return out;
}

MethylationTable read_methylation_tsv(const std::filesystem::path& path) {
    const auto t = tsv::read(path);
    check_leading(t, {"cpg_id", "gene_id", "chromosome"}, path);
    MethylationTable out;
    out.patients = patient_columns(t, 3);
    out.cpgs.reserve(t.rows.size());
    for (const auto& row : t.rows) {
        out.cpgs.push_back({row[0], row[1], row[2], parse_values(row, 3, path)});
    }
    return out;
}

void write_expression_tsv(const std::filesystem::path& path, const ExpressionTable& table) {
    auto out = open_for_write(path);
    write_header(out, {"gene_id", "chromosome"}, table.patients);
    for (const auto& g : table.genes) {
        out << g.gene_id << '\t' << g.chromosome;
        write_values(out, g.values);
    }
}

void write_methylation_tsv(const std::filesystem::path& path, const MethylationTable& table) {
    auto out = open_for_write(path);
    write_header(out, {"cpg_id", "gene_id", "chromosome"}, table.patients);
    for (const auto& c : table.cpgs) {
        out << c.cpg_id << '\t' << c.gene_id << '\t' << c.chromosome;
        write_values(out, c.values);
    }
}

void align_patients(MethylationTable& table, const std::vector<std::string>& patients) {
    const auto perm = column_permutation(table.patients, patients);
    for (auto& c : table.cpgs) permute(c.values, perm);
    table.patients = patients;
}

void align_patients(ExpressionTable& table, const std::vector<std::string>& patients) {
    const auto perm = column_permutation(table.patients, patients);
    for (auto& g : table.genes) permute(g.values, perm);
    table.patients = patients;
}

PairedDataset load_paired_dataset(const std::filesystem::path& expression_path,
                                  const std::filesystem::path& methylation_path,
                                  MappingMode mode) {
    auto expr = read_expression_tsv(expression_path);
    auto meth = read_methylation_tsv(methylation_path);
    align_patients(meth, expr.patients);
    return PairedDataset(std::move(expr.patients), std::move(expr.genes), std::move(meth.cpgs),
                         mode);
}

std::vector<PairedDataset> split_by_chromosome(const PairedDataset& ds) {
    const auto labels = ds.chromosomes();
    std::unordered_map<std::string, std::size_t> slot;
    for (std::size_t i = 0; i < labels.size(); ++i) slot.emplace(labels[i], i);

    std::vector<std::vector<GeneRecord>> genes(labels.size());
    std::vector<std::vector<CpgRecord>> cpgs(labels.size());
    for (std::size_t g = 0; g < ds.n_genes(); ++g) {
        genes[slot.at(ds.gene(g).chromosome)].push_back(ds.gene(g));
    }
    for (std::size_t c = 0; c < ds.n_cpgs(); ++c) {
        cpgs[slot.at(ds.gene(ds.gene_of(c)).chromosome)].push_back(ds.cpg(c));
    }

    std::vector<PairedDataset> out;
    out.reserve(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        out.emplace_back(ds.patients(), std::move(genes[i]), std::move(cpgs[i]),
                         MappingMode::strict);
    }
    return out;
}

}  // namespace jointmix
