#include "jointmix/dataset.hpp"
#include "jointmix/error.hpp"
#include "jointmix/simulator.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>

using namespace jointmix;

TEST_CASE("gene label counts are exact") {
    SimConfig cfg;
    cfg.pi_case = 2;
    cfg.seed = 7;
    const auto sim = simulate(cfg);
    const auto& l = sim.truth.gene_labels;
    CHECK(std::count(l.begin(), l.end(), kDown) == 50);
    CHECK(std::count(l.begin(), l.end(), kNull) == 400);
    CHECK(std::count(l.begin(), l.end(), kUp) == 50);
    CHECK(sim.raw.expression_a.genes.size() == 500);
    CHECK(sim.truth.cpg_labels.size() == sim.raw.methylation_a.cpgs.size());
}

TEST_CASE("negative binomial moments") {
    SimEngine rng(12345);
    const std::size_t n = 100000;
    double s = 0, ss = 0;
    std::vector<double> draws(n);
    for (auto& d : draws) {
        d = draw_negative_binomial(rng, 10000.0, 5.0);
        s += d;
    }
    const double mean = s / n;
    for (double d : draws) ss += (d - mean) * (d - mean);
    const double var = ss / (n - 1);
    const double expected_var = 10000.0 + 10000.0 * 10000.0 / 5.0;  // 2.001e7
    CHECK(std::abs(mean - 10000.0) < 3.0 * std::sqrt(expected_var / n));
    CHECK(std::abs(var - expected_var) < 0.1 * expected_var);
    for (double d : draws) CHECK_FALSE(d != std::floor(d));
}

TEST_CASE("beta draws stay in (0, 1) and have the right mean") {
    SimEngine rng(3);
    double s = 0;
    for (int i = 0; i < 20000; ++i) {
        const double b = draw_beta(rng, {3.0, 20.0});
        REQUIRE(b > 0.0);
        REQUIRE(b < 1.0);
        s += b;
    }
    CHECK(s / 20000 == doctest::Approx(3.0 / 23.0).epsilon(0.02));
}

TEST_CASE("case 3 CpG labels are independent of gene labels") {
    // Pearson chi-square on the 3 x 3 table; 0.999 quantile with 4 df is 18.47.
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        SimConfig cfg;
        cfg.pi_case = 3;
        cfg.seed = seed;
        const auto sim = simulate(cfg);
        const auto ds = PairedDataset(sim.raw.methylation_a.patients, sim.raw.expression_a.genes,
                                      sim.raw.methylation_a.cpgs);
        double table[3][3] = {};
        for (std::size_t c = 0; c < ds.n_cpgs(); ++c) {
            table[sim.truth.gene_labels[ds.gene_of(c)]][sim.truth.cpg_labels[c]] += 1;
        }
        double rows[3] = {}, cols[3] = {}, total = 0;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                rows[i] += table[i][j];
                cols[j] += table[i][j];
                total += table[i][j];
            }
        }
        double chi2 = 0;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                const double e = rows[i] * cols[j] / total;
                chi2 += (table[i][j] - e) * (table[i][j] - e) / e;
            }
        }
        CHECK(chi2 < 18.467);
    }
}

TEST_CASE("CpG label frequencies follow pi") {
    for (int pi_case : {1, 2}) {
        SimConfig cfg;
        cfg.pi_case = pi_case;
        const Matrix pi = cfg.pi_matrix();
        double counts[3][3] = {};
        double per_gene[3] = {};
        for (const auto& sim : replicate_batch(cfg, 8)) {
            const auto ds = PairedDataset(sim.raw.methylation_a.patients,
                                          sim.raw.expression_a.genes, sim.raw.methylation_a.cpgs);
            for (std::size_t c = 0; c < ds.n_cpgs(); ++c) {
                const auto k = sim.truth.gene_labels[ds.gene_of(c)];
                counts[k][sim.truth.cpg_labels[c]] += 1;
                per_gene[k] += 1;
            }
        }
        for (int k = 0; k < 3; ++k) {
            for (int l = 0; l < 3; ++l) {
                CHECK(std::abs(counts[k][l] / per_gene[k] - pi(l, k)) < 0.02);
            }
        }
    }
}

TEST_CASE("benchmark pi matrices are column stochastic") {
    for (int c : {1, 2, 3}) {
        const Matrix pi = benchmark_pi(c);
        for (std::size_t k = 0; k < 3; ++k) {
            CHECK(pi(0, k) + pi(1, k) + pi(2, k) == doctest::Approx(1.0).epsilon(1e-14));
        }
    }
    CHECK(benchmark_pi(2)(1, 1) == 0.8);
    CHECK(benchmark_pi(1)(0, 2) == 0.4);
    CHECK_THROWS_AS(benchmark_pi(4), ParameterError);
}

TEST_CASE("config validation") {
    SimConfig cfg;
    cfg.prop_down = 0.6;
    cfg.prop_up = 0.5;
    CHECK_THROWS_AS(cfg.validate(), ParameterError);
    cfg = SimConfig{};
    cfg.cpg_min = 10;
    cfg.cpg_max = 5;
    CHECK_THROWS_AS(cfg.validate(), ParameterError);
    cfg = SimConfig{};
    cfg.nb_size = 0;
    CHECK_THROWS_AS(cfg.validate(), ParameterError);
    cfg = SimConfig{};
    cfg.pi_case = 0;
    cfg.pi = Matrix(3, 3);
    CHECK_THROWS_AS(cfg.validate(), ParameterError);
}

TEST_CASE("values are in range") {
    SimConfig cfg;
    cfg.genes = 100;
    const auto sim = simulate(cfg);
    for (const auto* t : {&sim.raw.methylation_a, &sim.raw.methylation_b}) {
        for (const auto& c : t->cpgs) {
            for (double b : c.values) {
                CHECK(b > 0.0);
                CHECK(b < 1.0);
            }
        }
    }
    for (const auto& g : sim.raw.expression_b.genes) {
        for (double v : g.values) CHECK(v >= 0.0);
    }
}

TEST_CASE("write, read back and re-simulate from the written config") {
    testutil::TempDir dir("sim");
    SimConfig cfg;
    cfg.genes = 60;
    cfg.chromosomes = 3;
    cfg.seed = 99;
    const auto sim = simulate(cfg);
    write_simulation(sim, dir.path());

    const auto ea = read_expression_tsv(dir / "expression_A.tsv");
    const auto mb = read_methylation_tsv(dir / "methylation_B.tsv");
    CHECK(ea.genes == sim.raw.expression_a.genes);
    CHECK(mb.cpgs == sim.raw.methylation_b.cpgs);

    const auto truth = testutil::read_file(dir / "truth.tsv");
    const auto lines = std::count(truth.begin(), truth.end(), '\n');
    CHECK(static_cast<std::size_t>(lines) ==
          1 + sim.truth.gene_labels.size() + sim.truth.cpg_labels.size());

    std::ifstream in(dir / "sim_config.json");
    const auto j = nlohmann::json::parse(in);
    const SimConfig back = sim_config_from_json(j);
    testutil::TempDir dir2("sim2");
    write_simulation(simulate(back, j.at("replicate").get<std::size_t>()), dir2.path());
    for (const char* f : {"expression_A.tsv", "expression_B.tsv", "methylation_A.tsv",
                          "methylation_B.tsv", "truth.tsv", "sim_config.json"}) {
        CAPTURE(f);
        CHECK(testutil::read_file(dir / f) == testutil::read_file(dir2 / f));
    }
}

TEST_CASE("chromosomes split the genes into contiguous blocks") {
    SimConfig cfg;
    cfg.genes = 44;
    cfg.chromosomes = 22;
    const auto sim = simulate(cfg);
    const PairedDataset ds(sim.raw.expression_a.patients, sim.raw.expression_a.genes,
                           sim.raw.methylation_a.cpgs);
    CHECK(ds.chromosomes().size() == 22);
}

TEST_CASE("replicate batches") {
    SimConfig cfg;
    const auto batch = replicate_batch(cfg, 3);
    CHECK(batch.size() == 3);
    const auto r0 = batch[0];
    const auto r1 = batch[1];
    CHECK(r0.raw.expression_a.genes == simulate(cfg).raw.expression_a.genes);
    CHECK(r0.raw.expression_a.genes != r1.raw.expression_a.genes);
    CHECK(r0.config.pi_case == r1.config.pi_case);
    std::size_t n = 0;
    for (const auto& s : batch) {
        const auto C = s.truth.cpg_labels.size();
        CHECK(C >= 1500);
        CHECK(C <= 15000);
        ++n;
    }
    CHECK(n == 3);
    CHECK_THROWS_AS(replicate_batch(cfg, 0), ParameterError);
}
