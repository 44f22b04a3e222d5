#pragma once

// Synthetic paired RNA-seq counts and methylation beta values with known
// gene (E-/E0/E+) and CpG (M-/M0/M+) labels.

#include "jointmix/matrix.hpp"
#include "jointmix/preprocess.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace jointmix {

// Label indices shared by both layers: 0 = down / hypo (E-, M-),
// 1 = null (E0, M0), 2 = up / hyper (E+, M+).
inline constexpr std::size_t kDown = 0;
inline constexpr std::size_t kNull = 1;
inline constexpr std::size_t kUp = 2;

std::string gene_label_name(std::size_t label);
std::string cpg_label_name(std::size_t label);

// Three benchmark dependency settings, as a 3 x 3 matrix with rows
// (M-, M0, M+) and columns (E-, E0, E+). ParameterError for other cases.
Matrix benchmark_pi(int pi_case);

struct BetaShape {
    double a = 1.0;
    double b = 1.0;
};

struct SimConfig {
    std::size_t genes = 500;
    std::size_t patients = 4;
    int pi_case = 1;  // 1, 2, 3; 0 means use `pi`
    Matrix pi;        // 3 x 3 explicit matrix when pi_case == 0
    double prop_down = 0.10;
    double prop_up = 0.10;
    double nb_mean_base = 10000.0;
    double nb_mean_down = 4000.0;
    double nb_mean_up = 60000.0;
    double nb_size = 5.0;
    std::size_t cpg_min = 3;
    std::size_t cpg_max = 30;
    BetaShape hypo{3.0, 20.0};
    BetaShape hyper{20.0, 3.0};
    BetaShape hemi{4.0, 3.0};
    double noise_sd = 0.05;
    double beta_eps = 1e-6;
    std::size_t chromosomes = 1;
    std::uint64_t seed = 1;

    // ParameterError on inconsistent settings.
    void validate() const;
    // The 3 x 3 pi in effect (rows M-, M0, M+; columns E-, E0, E+).
    Matrix pi_matrix() const;
};

nlohmann::json to_json(const SimConfig& cfg);
SimConfig sim_config_from_json(const nlohmann::json& j);

struct SimTruth {
    std::vector<std::size_t> gene_labels;  // length G
    std::vector<std::size_t> cpg_labels;   // length C
};

struct Simulation {
    SimConfig config;
    std::size_t replicate = 0;
    RawPairedInput raw;  // condition A and B tables for both layers
    SimTruth truth;
};

using SimEngine = std::mt19937_64;

// Engine for replicate r: std::seed_seq over {seed low word, seed high word, r}.
SimEngine replicate_engine(std::uint64_t seed, std::size_t replicate);

// Gamma-Poisson mixture: Poisson(Gamma(shape = size, scale = mean / size)),
// i.e. variance mean + mean^2 / size.
double draw_negative_binomial(SimEngine& rng, double mean, double size);
double draw_beta(SimEngine& rng, BetaShape shape);

// Condition A counts ~ NB(base); condition B by gene label; each count is
// then replaced by a Poisson draw with that mean. C_g ~ U{cpg_min..cpg_max},
// CpG labels drawn from the pi column of the gene's label, beta values from
// the label's Beta pair plus N(0, noise_sd^2), clamped to [eps, 1 - eps].
Simulation simulate(const SimConfig& cfg, std::size_t replicate = 0);

// Writes expression_A.tsv, expression_B.tsv, methylation_A.tsv,
// methylation_B.tsv, truth.tsv and sim_config.json into `dir`.
void write_simulation(const Simulation& sim, const std::filesystem::path& dir);

// Lazily generated replicates 0..n-1 of one configuration.
class ReplicateBatch {
public:
    ReplicateBatch(SimConfig cfg, std::size_t n);

    std::size_t size() const noexcept { return n_; }
    const SimConfig& config() const noexcept { return cfg_; }
    Simulation operator[](std::size_t r) const { return simulate(cfg_, r); }

    class iterator {
    public:
        using value_type = Simulation;
        using difference_type = std::ptrdiff_t;

        iterator() = default;
        iterator(const ReplicateBatch* batch, std::size_t r) : batch_(batch), r_(r) {}
        Simulation operator*() const { return (*batch_)[r_]; }
        iterator& operator++() {
            ++r_;
            return *this;
        }
        iterator operator++(int) {
            auto old = *this;
            ++r_;
            return old;
        }
        bool operator==(const iterator& o) const { return r_ == o.r_; }

    private:
        const ReplicateBatch* batch_ = nullptr;
        std::size_t r_ = 0;
    };

    iterator begin() const { return {this, 0}; }
    iterator end() const { return {this, n_}; }

private:
    SimConfig cfg_;
    std::size_t n_;
};

ReplicateBatch replicate_batch(const SimConfig& cfg, std::size_t n);

}  // namespace jointmix
