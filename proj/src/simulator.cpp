#include "jointmix/simulator.hpp"

#include "jointmix/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>

namespace jointmix {
namespace {

std::string padded(const char* prefix, std::size_t i, std::size_t total) {
    const auto width = fmt::format("{}", total).size();
    return fmt::format("{}{:0{}}", prefix, i, width);
}

void write_truth(const Simulation& sim, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(fmt::format("cannot write '{}'", path.string()));
    out << "entity_id\tlabel\n";
    for (std::size_t g = 0; g < sim.truth.gene_labels.size(); ++g) {
        out << sim.raw.expression_a.genes[g].gene_id << '\t'
            << gene_label_name(sim.truth.gene_labels[g]) << '\n';
    }
    for (std::size_t c = 0; c < sim.truth.cpg_labels.size(); ++c) {
        out << sim.raw.methylation_a.cpgs[c].cpg_id << '\t'
            << cpg_label_name(sim.truth.cpg_labels[c]) << '\n';
    }
}

}  // namespace

std::string gene_label_name(std::size_t label) {
    static const char* names[] = {"E-", "E0", "E+"};
    return label < 3 ? names[label] : fmt::format("{}", label + 1);
}

std::string cpg_label_name(std::size_t label) {
    static const char* names[] = {"M-", "M0", "M+"};
    return label < 3 ? names[label] : fmt::format("{}", label + 1);
}

Matrix benchmark_pi(int pi_case) {
    // Rows M-, M0, M+; columns E-, E0, E+.
    static constexpr double table[3][3][3] = {
        {{0.10, 0.05, 0.40}, {0.50, 0.90, 0.50}, {0.40, 0.05, 0.10}},
        {{0.10, 0.10, 0.80}, {0.10, 0.80, 0.10}, {0.80, 0.10, 0.10}},
        {{0.20, 0.20, 0.20}, {0.60, 0.60, 0.60}, {0.20, 0.20, 0.20}},
    };
    if (pi_case < 1 || pi_case > 3) {
        throw ParameterError(fmt::format("unknown pi case {}; expected 1, 2 or 3", pi_case));
    }
    Matrix pi(3, 3);
    for (std::size_t l = 0; l < 3; ++l) {
        for (std::size_t k = 0; k < 3; ++k) pi(l, k) = table[pi_case - 1][l][k];
    }
    return pi;
}

void SimConfig::validate() const {
    if (genes == 0 || patients == 0) throw ParameterError("genes and patients must be positive");
    if (!(prop_down >= 0.0 && prop_up >= 0.0 && prop_down + prop_up < 1.0)) {
        throw ParameterError("need prop_down, prop_up >= 0 and prop_down + prop_up < 1");
    }
    if (cpg_min > cpg_max) throw ParameterError("cpg_min exceeds cpg_max");
    for (double v : {nb_mean_base, nb_mean_down, nb_mean_up, nb_size, hypo.a, hypo.b, hyper.a,
                     hyper.b, hemi.a, hemi.b}) {
        if (!(v > 0.0)) throw ParameterError("negative-binomial and Beta parameters must be positive");
    }
    if (!(noise_sd >= 0.0)) throw ParameterError("noise_sd must be non-negative");
    if (!(beta_eps > 0.0 && beta_eps < 0.5)) throw ParameterError("beta_eps must be in (0, 0.5)");
    if (chromosomes == 0 || chromosomes > genes) {
        throw ParameterError("chromosomes must be between 1 and the number of genes");
    }
    const Matrix p = pi_matrix();
    for (std::size_t k = 0; k < 3; ++k) {
        double col = 0.0;
        for (std::size_t l = 0; l < 3; ++l) {
            if (!(p(l, k) >= 0.0)) throw ParameterError("pi entries must be non-negative");
            col += p(l, k);
        }
        if (std::abs(col - 1.0) > 1e-9) {
            throw ParameterError(fmt::format("pi column {} sums to {}", k + 1, col));
        }
    }
}

Matrix SimConfig::pi_matrix() const {
    if (pi_case != 0) return benchmark_pi(pi_case);
    if (pi.rows() != 3 || pi.cols() != 3) throw ParameterError("explicit pi must be 3 x 3");
    return pi;
}

nlohmann::json to_json(const SimConfig& cfg) {
    nlohmann::json j;
    j["genes"] = cfg.genes;
    j["patients"] = cfg.patients;
    j["pi_case"] = cfg.pi_case;
    const Matrix pi = cfg.pi_matrix();
    j["pi"] = nlohmann::json::array();
    for (std::size_t l = 0; l < 3; ++l) {
        j["pi"].push_back({pi(l, 0), pi(l, 1), pi(l, 2)});
    }
    j["prop_down"] = cfg.prop_down;
    j["prop_up"] = cfg.prop_up;
    j["nb_mean_base"] = cfg.nb_mean_base;
    j["nb_mean_down"] = cfg.nb_mean_down;
    j["nb_mean_up"] = cfg.nb_mean_up;
    j["nb_size"] = cfg.nb_size;
    j["cpg_min"] = cfg.cpg_min;
    j["cpg_max"] = cfg.cpg_max;
    j["beta_hypo"] = {cfg.hypo.a, cfg.hypo.b};
    j["beta_hyper"] = {cfg.hyper.a, cfg.hyper.b};
    j["beta_hemi"] = {cfg.hemi.a, cfg.hemi.b};
    j["noise_sd"] = cfg.noise_sd;
    j["beta_eps"] = cfg.beta_eps;
    j["chromosomes"] = cfg.chromosomes;
    j["seed"] = cfg.seed;
    return j;
}

SimConfig sim_config_from_json(const nlohmann::json& j) {
    SimConfig c;
    try {
        c.genes = j.at("genes").get<std::size_t>();
        c.patients = j.at("patients").get<std::size_t>();
        c.pi_case = j.at("pi_case").get<int>();
        if (c.pi_case == 0) {
            c.pi = Matrix(3, 3);
            for (std::size_t l = 0; l < 3; ++l) {
                for (std::size_t k = 0; k < 3; ++k) c.pi(l, k) = j.at("pi").at(l).at(k).get<double>();
            }
        }
        c.prop_down = j.at("prop_down").get<double>();
        c.prop_up = j.at("prop_up").get<double>();
        c.nb_mean_base = j.at("nb_mean_base").get<double>();
        c.nb_mean_down = j.at("nb_mean_down").get<double>();
        c.nb_mean_up = j.at("nb_mean_up").get<double>();
        c.nb_size = j.at("nb_size").get<double>();
        c.cpg_min = j.at("cpg_min").get<std::size_t>();
        c.cpg_max = j.at("cpg_max").get<std::size_t>();
        c.hypo = {j.at("beta_hypo").at(0).get<double>(), j.at("beta_hypo").at(1).get<double>()};
        c.hyper = {j.at("beta_hyper").at(0).get<double>(), j.at("beta_hyper").at(1).get<double>()};
        c.hemi = {j.at("beta_hemi").at(0).get<double>(), j.at("beta_hemi").at(1).get<double>()};
        c.noise_sd = j.at("noise_sd").get<double>();
        c.beta_eps = j.at("beta_eps").get<double>();
        c.chromosomes = j.at("chromosomes").get<std::size_t>();
        c.seed = j.at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(fmt::format("invalid simulation config: {}", e.what()));
    }
    c.validate();
    return c;
}

SimEngine replicate_engine(std::uint64_t seed, std::size_t replicate) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(replicate),
                      static_cast<std::uint32_t>(static_cast<std::uint64_t>(replicate) >> 32)};
    return SimEngine(seq);
}

double draw_negative_binomial(SimEngine& rng, double mean, double size) {
    std::gamma_distribution<double> gamma(size, mean / size);
    const double rate = gamma(rng);
    if (!(rate > 0.0)) return 0.0;
    std::poisson_distribution<long long> pois(rate);
    return static_cast<double>(pois(rng));
}

double draw_beta(SimEngine& rng, BetaShape shape) {
    std::gamma_distribution<double> ga(shape.a, 1.0);
    std::gamma_distribution<double> gb(shape.b, 1.0);
    const double x = ga(rng);
    const double y = gb(rng);
    return x / (x + y);
}

Simulation simulate(const SimConfig& cfg, std::size_t replicate) {
    cfg.validate();
    SimEngine rng = replicate_engine(cfg.seed, replicate);
    const std::size_t G = cfg.genes;
    const std::size_t N = cfg.patients;
    const Matrix pi = cfg.pi_matrix();

    Simulation sim;
    sim.config = cfg;
    sim.replicate = replicate;

    std::vector<std::string> patients;
    for (std::size_t n = 0; n < N; ++n) patients.push_back(fmt::format("P{}", n + 1));
    sim.raw.expression_a.patients = patients;
    sim.raw.expression_b.patients = patients;
    sim.raw.methylation_a.patients = patients;
    sim.raw.methylation_b.patients = patients;

    const auto n_down =
        static_cast<std::size_t>(std::floor(cfg.prop_down * static_cast<double>(G) + 1e-9));
    const auto n_up =
        static_cast<std::size_t>(std::floor(cfg.prop_up * static_cast<double>(G) + 1e-9));
    auto& gene_labels = sim.truth.gene_labels;
    gene_labels.assign(G, kNull);
    std::fill_n(gene_labels.begin(), n_down, kDown);
    std::fill_n(gene_labels.begin() + static_cast<std::ptrdiff_t>(n_down), n_up, kUp);
    std::shuffle(gene_labels.begin(), gene_labels.end(), rng);

    auto noisy_count = [&](double mean) {
        const double generated = draw_negative_binomial(rng, mean, cfg.nb_size);
        if (generated <= 0.0) return 0.0;
        std::poisson_distribution<long long> pois(generated);
        return static_cast<double>(pois(rng));
    };

    for (std::size_t g = 0; g < G; ++g) {
        const std::string id = padded("gene", g + 1, G);
        const std::string chrom = fmt::format("{}", 1 + g * cfg.chromosomes / G);
        const double mean_b = gene_labels[g] == kDown ? cfg.nb_mean_down
                              : gene_labels[g] == kUp ? cfg.nb_mean_up
                                                      : cfg.nb_mean_base;
        GeneRecord a{id, chrom, std::vector<double>(N)};
        GeneRecord b{id, chrom, std::vector<double>(N)};
        for (std::size_t n = 0; n < N; ++n) {
            a.values[n] = noisy_count(cfg.nb_mean_base);
            b.values[n] = noisy_count(mean_b);
        }
        sim.raw.expression_a.genes.push_back(std::move(a));
        sim.raw.expression_b.genes.push_back(std::move(b));
    }

    std::uniform_int_distribution<std::size_t> n_cpgs(cfg.cpg_min, cfg.cpg_max);
    std::vector<std::size_t> cpgs_per_gene(G);
    for (auto& cg : cpgs_per_gene) cg = n_cpgs(rng);
    std::size_t total = 0;
    for (auto cg : cpgs_per_gene) total += cg;

    std::normal_distribution<double> noise(0.0, cfg.noise_sd);
    std::uniform_int_distribution<int> null_state(0, 2);
    auto noisy_beta = [&](BetaShape shape) {
        const double b = draw_beta(rng, shape) + (cfg.noise_sd > 0.0 ? noise(rng) : 0.0);
        return std::clamp(b, cfg.beta_eps, 1.0 - cfg.beta_eps);
    };

    std::size_t cpg_index = 0;
    for (std::size_t g = 0; g < G; ++g) {
        const auto& gene = sim.raw.expression_a.genes[g];
        std::discrete_distribution<std::size_t> label_dist(
            {pi(0, gene_labels[g]), pi(1, gene_labels[g]), pi(2, gene_labels[g])});
        for (std::size_t i = 0; i < cpgs_per_gene[g]; ++i) {
            const std::size_t label = label_dist(rng);
            BetaShape shape_a;
            BetaShape shape_b;
            if (label == kUp) {
                shape_a = cfg.hypo;
                shape_b = cfg.hyper;
            } else if (label == kDown) {
                shape_a = cfg.hyper;
                shape_b = cfg.hypo;
            } else {
                const int state = null_state(rng);
                shape_a = state == 0 ? cfg.hypo : state == 1 ? cfg.hyper : cfg.hemi;
                shape_b = shape_a;
            }
            const std::string id = padded("cpg", ++cpg_index, total);
            CpgRecord a{id, gene.gene_id, gene.chromosome, std::vector<double>(N)};
            CpgRecord b{id, gene.gene_id, gene.chromosome, std::vector<double>(N)};
            for (std::size_t n = 0; n < N; ++n) {
                a.values[n] = noisy_beta(shape_a);
                b.values[n] = noisy_beta(shape_b);
            }
            sim.truth.cpg_labels.push_back(label);
            sim.raw.methylation_a.cpgs.push_back(std::move(a));
            sim.raw.methylation_b.cpgs.push_back(std::move(b));
        }
    }
    return sim;
}

void write_simulation(const Simulation& sim, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_expression_tsv(dir / "expression_A.tsv", sim.raw.expression_a);
    write_expression_tsv(dir / "expression_B.tsv", sim.raw.expression_b);
    write_methylation_tsv(dir / "methylation_A.tsv", sim.raw.methylation_a);
    write_methylation_tsv(dir / "methylation_B.tsv", sim.raw.methylation_b);
    write_truth(sim, dir / "truth.tsv");

    auto j = to_json(sim.config);
    j["replicate"] = sim.replicate;
    std::ofstream out(dir / "sim_config.json", std::ios::binary);
    if (!out) throw Error(fmt::format("cannot write '{}'", (dir / "sim_config.json").string()));
    out << j.dump(2) << '\n';
}

ReplicateBatch::ReplicateBatch(SimConfig cfg, std::size_t n) : cfg_(std::move(cfg)), n_(n) {
    if (n_ == 0) throw ParameterError("replicate count must be at least 1");
    cfg_.validate();
}

ReplicateBatch replicate_batch(const SimConfig& cfg, std::size_t n) { return {cfg, n}; }

}  // namespace jointmix
