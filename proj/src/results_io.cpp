#include "jointmix/results_io.hpp"

#include "jointmix/error.hpp"
#include "jointmix/simulator.hpp"
#include "jointmix/tsv.hpp"

#include <fmt/format.h>

#include <charconv>
#include <fstream>

namespace jointmix {
namespace {

std::string posterior_columns(std::size_t count, const char* const tri[3]) {
    std::string out;
    for (std::size_t i = 0; i < count; ++i) {
        out += count == 3 ? fmt::format("\tposterior_{}", tri[i])
                          : fmt::format("\tposterior_{}", i + 1);
    }
    return out;
}

std::string label_text(std::size_t label, std::size_t count, bool gene) {
    if (count == 3) return gene ? gene_label_name(label) : cpg_label_name(label);
    return fmt::format("{}", label + 1);
}

void append_posteriors(std::string& out, std::span<const double> row) {
    for (double p : row) out += '\t' + tsv::format_double(p);
}

std::size_t column_index(const tsv::Table& t, const std::string& name,
                         const std::filesystem::path& path) {
    for (std::size_t i = 0; i < t.header.size(); ++i) {
        if (t.header[i] == name) return i;
    }
    throw FormatError(fmt::format("'{}' has no '{}' column", path.string(), name));
}

}  // namespace

nlohmann::json fit_to_json(const FitResult& fit) {
    const auto& p = fit.params;
    nlohmann::json j;
    j["K"] = p.K;
    j["L"] = p.L;
    j["tau"] = p.tau;
    j["pi"] = nlohmann::json::array();
    for (std::size_t l = 0; l < p.L; ++l) {
        const auto row = p.pi.row(l);
        j["pi"].push_back(std::vector<double>(row.begin(), row.end()));
    }
    j["mu"] = p.mu;
    j["sigma2"] = p.sigma2;
    j["lambda"] = p.lambda;
    j["rho2"] = p.rho2;
    j["n_outer_iters"] = fit.n_outer_iters;
    j["converged"] = fit.converged;
    return j;
}

nlohmann::json chromosome_fits_to_json(const std::vector<ChromosomeFit>& fits, std::size_t K,
                                       std::size_t L) {
    nlohmann::json j;
    j["K"] = K;
    j["L"] = L;
    // Keep input order rather than sorting keys.
    j["chromosomes"] = nlohmann::json::array();
    for (const auto& f : fits) {
        nlohmann::json entry = f.result ? fit_to_json(*f.result) : nlohmann::json::object();
        entry["chromosome"] = f.chromosome;
        if (!f.result) entry["error"] = f.error;
        j["chromosomes"].push_back(std::move(entry));
    }
    return j;
}

std::string gene_results_header(std::size_t K) {
    static const char* const names[3] = {"Eminus", "E0", "Eplus"};
    return "gene_id\tchromosome" + posterior_columns(K, names) + "\tmap_label\tuncertainty\n";
}

std::string cpg_results_header(std::size_t L) {
    static const char* const names[3] = {"Mminus", "M0", "Mplus"};
    return "cpg_id\tgene_id\tchromosome" + posterior_columns(L, names) +
           "\tmap_label\tuncertainty\n";
}

std::string gene_results_rows(const PairedDataset& ds, const Matrix& u, const MapAssignment& map) {
    std::string out;
    for (std::size_t g = 0; g < ds.n_genes(); ++g) {
        out += ds.gene(g).gene_id + '\t' + ds.gene(g).chromosome;
        append_posteriors(out, u.row(g));
        out += '\t' + label_text(map.labels[g], u.cols(), true) + '\t' +
               tsv::format_double(map.uncertainty[g]) + '\n';
    }
    return out;
}

std::string cpg_results_rows(const PairedDataset& ds, const Matrix& v, const MapAssignment& map) {
    std::string out;
    for (std::size_t c = 0; c < ds.n_cpgs(); ++c) {
        const auto& rec = ds.cpg(c);
        out += rec.cpg_id + '\t' + rec.gene_id + '\t' + rec.chromosome;
        append_posteriors(out, v.row(c));
        out += '\t' + label_text(map.labels[c], v.cols(), false) + '\t' +
               tsv::format_double(map.uncertainty[c]) + '\n';
    }
    return out;
}

std::size_t parse_label(const std::string& name) {
    if (name == "E-" || name == "M-") return 0;
    if (name == "E0" || name == "M0") return 1;
    if (name == "E+" || name == "M+") return 2;
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(), v);
    if (ec != std::errc{} || ptr != name.data() + name.size() || v == 0) {
        throw FormatError(fmt::format("unknown cluster label '{}'", name));
    }
    return v - 1;
}

std::unordered_map<std::string, std::size_t> read_truth(const std::filesystem::path& path) {
    const auto t = tsv::read(path);
    const auto id = column_index(t, "entity_id", path);
    const auto label = column_index(t, "label", path);
    std::unordered_map<std::string, std::size_t> out;
    for (const auto& row : t.rows) {
        if (!out.emplace(row[id], parse_label(row[label])).second) {
            throw DuplicateError(fmt::format("'{}': duplicate id '{}'", path.string(), row[id]));
        }
    }
    return out;
}

std::unordered_map<std::string, std::size_t> read_predicted_labels(
    const std::filesystem::path& path) {
    const auto t = tsv::read(path);
    const auto label = column_index(t, "map_label", path);
    std::unordered_map<std::string, std::size_t> out;
    for (const auto& row : t.rows) {
        if (!out.emplace(row[0], parse_label(row[label])).second) {
            throw DuplicateError(fmt::format("'{}': duplicate id '{}'", path.string(), row[0]));
        }
    }
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(fmt::format("cannot write '{}'", path.string()));
    out << text;
}

}  // namespace jointmix
