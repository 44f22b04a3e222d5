#pragma once

#include "jointmix/chromosome_fit.hpp"
#include "jointmix/dataset.hpp"
#include "jointmix/joint_em.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

namespace jointmix {

// {K, L, tau[K], pi[L][K], mu[K], sigma2, lambda[L], rho2, n_outer_iters, converged}
nlohmann::json fit_to_json(const FitResult& fit);

// Per-chromosome nesting: {"K", "L", "chromosomes": {label: fit_to_json | {"error"}}}.
nlohmann::json chromosome_fits_to_json(const std::vector<ChromosomeFit>& fits, std::size_t K,
                                       std::size_t L);

// gene_id, chromosome, posterior_Eminus, posterior_E0, posterior_Eplus,
// map_label, uncertainty. With K != 3 the posterior columns are posterior_1..K
// and labels are 1-based integers.
std::string gene_results_header(std::size_t K);
std::string gene_results_rows(const PairedDataset& ds, const Matrix& u, const MapAssignment& map);

// cpg_id, gene_id, chromosome, posterior_Mminus, posterior_M0, posterior_Mplus,
// map_label, uncertainty.
std::string cpg_results_header(std::size_t L);
std::string cpg_results_rows(const PairedDataset& ds, const Matrix& v, const MapAssignment& map);

// Label name -> zero-based class: E-/M- -> 0, E0/M0 -> 1, E+/M+ -> 2, and
// 1-based integers otherwise. FormatError on anything else.
std::size_t parse_label(const std::string& name);

// id -> label from truth.tsv (entity_id, label).
std::unordered_map<std::string, std::size_t> read_truth(const std::filesystem::path& path);

// id -> map_label from a gene or CpG results TSV (first column is the id).
std::unordered_map<std::string, std::size_t> read_predicted_labels(
    const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace jointmix
