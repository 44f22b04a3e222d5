#include "jointmix/baseline.hpp"
#include "jointmix/error.hpp"
#include "jointmix/joint_em.hpp"
#include "jointmix/log.hpp"
#include "jointmix/preprocess.hpp"
#include "jointmix/simulator.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace jointmix;

namespace {

// Genes with given values; cpg_parent[i] is the index of CpG i's gene.
PairedDataset make_ds(const std::vector<std::vector<double>>& x,
                      const std::vector<std::size_t>& cpg_parent,
                      const std::vector<std::vector<double>>& y) {
    std::vector<std::string> patients;
    for (std::size_t n = 0; n < x.at(0).size(); ++n) patients.push_back("P" + std::to_string(n));
    std::vector<GeneRecord> genes;
    for (std::size_t g = 0; g < x.size(); ++g) genes.push_back({"g" + std::to_string(g), "1", x[g]});
    std::vector<CpgRecord> cpgs;
    for (std::size_t c = 0; c < y.size(); ++c) {
        cpgs.push_back({"c" + std::to_string(c), "g" + std::to_string(cpg_parent[c]), "1", y[c]});
    }
    return PairedDataset(patients, genes, cpgs);
}

Responsibilities hard(const PairedDataset& ds, std::size_t K, std::size_t L,
                      const std::vector<std::size_t>& gl, const std::vector<std::size_t>& cl) {
    Responsibilities r;
    r.u = Matrix(ds.n_genes(), K);
    r.v = Matrix(ds.n_cpgs(), L);
    for (std::size_t g = 0; g < gl.size(); ++g) r.u(g, gl[g]) = 1.0;
    for (std::size_t c = 0; c < cl.size(); ++c) r.v(c, cl[c]) = 1.0;
    set_product_joint(ds, r);
    return r;
}

JointParams equal_column_params(JointParams p) {
    for (std::size_t k = 1; k < p.K; ++k) {
        for (std::size_t l = 0; l < p.L; ++l) p.pi(l, k) = p.pi(l, 0);
    }
    return p;
}

double max_diff(const Matrix& a, const Matrix& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        d = std::max(d, std::abs(a.data()[i] - b.data()[i]));
    }
    return d;
}

struct QuietLog {
    QuietLog() { log::set_level(log::Level::error); }
    ~QuietLog() { log::set_level(log::Level::warn); }
};

}  // namespace

// ---------------------------------------------------------------- init

TEST_CASE("quantile labels") {
    std::vector<double> m(10);
    std::iota(m.begin(), m.end(), 1.0);
    const auto l = quantile_labels(m, 3, 0.10);
    CHECK(l[0] == 0);
    CHECK(l[9] == 2);
    for (std::size_t i = 1; i < 9; ++i) CHECK(l[i] == 1);

    // ties keep input order
    const std::vector<double> same(5, 2.0);
    CHECK(quantile_labels(same, 3, 0.10) == std::vector<std::size_t>{0, 1, 1, 1, 2});

    std::vector<double> sym;
    for (int i = 1; i <= 10; ++i) {
        sym.push_back(i * 0.5);
        sym.push_back(-i * 0.5);
    }
    const auto ls = quantile_labels(sym, 3, 0.10);
    CHECK(std::count(ls.begin(), ls.end(), 0u) == 2);
    CHECK(std::count(ls.begin(), ls.end(), 1u) == 16);
    CHECK(std::count(ls.begin(), ls.end(), 2u) == 2);

    // 0.1 * 500 is exactly 50 per tail
    std::vector<double> big(500);
    std::iota(big.begin(), big.end(), 0.0);
    const auto lb = quantile_labels(big, 3, 0.10);
    CHECK(std::count(lb.begin(), lb.end(), 0u) == 50);
    CHECK(std::count(lb.begin(), lb.end(), 2u) == 50);

    CHECK(quantile_labels(std::vector<double>{3, 1, 2, 0}, 2, 0.1) ==
          std::vector<std::size_t>{1, 0, 1, 0});
    CHECK_THROWS_AS(quantile_labels(m, 3, 0.5), ParameterError);
    CHECK_THROWS_AS(quantile_labels(m, 3, 0.0), ParameterError);
    CHECK_THROWS_AS(quantile_labels(std::vector<double>{1, 2}, 3, 0.1), ParameterError);
}

// ---------------------------------------------------------------- M-step

TEST_CASE("M-step: tau by counting") {
    const auto ds = make_ds({{0}, {1}, {2}, {1.5}}, {0, 1, 2, 3, 1, 2}, {{0}, {1}, {2}, {0}, {1}, {2}});
    const auto r = hard(ds, 3, 3, {0, 1, 2, 1}, {0, 1, 2, 0, 1, 2});
    const auto p = m_step(ds, r);
    CHECK(p.tau[0] == doctest::Approx(0.25));
    CHECK(p.tau[1] == doctest::Approx(0.5));
    CHECK(p.tau[2] == doctest::Approx(0.25));
}

TEST_CASE("M-step: pi by counting") {
    // gene 0 in k=0 with CpGs in l=(0,1); gene 1 in k=0 with one CpG in l=0;
    // gene 2 in k=1 with one CpG in l=1.
    const auto ds = make_ds({{0}, {0.5}, {3}}, {0, 0, 1, 2}, {{0}, {1}, {0.2}, {1.2}});
    const auto r = hard(ds, 2, 2, {0, 0, 1}, {0, 1, 0, 1});
    const auto p = m_step(ds, r);
    CHECK(p.pi(0, 0) == doctest::Approx(2.0 / 3.0));
    CHECK(p.pi(1, 0) == doctest::Approx(1.0 / 3.0));
    CHECK(p.pi(0, 1) == doctest::Approx(0.0));
    CHECK(p.pi(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("M-step: mean and pooled variance, single component") {
    const auto ds = make_ds({{1, 2}, {3, 4}}, {0}, {{0.0, 1.0}});
    const auto r = hard(ds, 1, 1, {0, 0}, {0});
    const auto p = m_step(ds, r);
    CHECK(p.mu[0] == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(p.sigma2 == doctest::Approx(1.25).epsilon(1e-15));
    CHECK(p.pi(0, 0) == 1.0);
    const auto mo = oracle::weighted_moments({{1, 2}, {3, 4}}, std::vector<double>{1.0, 1.0});
    CHECK(p.sigma2 == doctest::Approx(mo.var).epsilon(1e-15));
}

TEST_CASE("M-step agrees with the weighted-moment oracle on soft responsibilities") {
    const auto ds = oracle::random_dataset(21, 15, 3, 0, 4);
    const auto r = oracle::random_resp(22, ds, 3, 3);
    const auto p = m_step(ds, r);
    std::vector<std::vector<double>> xs;
    for (std::size_t g = 0; g < ds.n_genes(); ++g) {
        xs.emplace_back(ds.gene_values(g).begin(), ds.gene_values(g).end());
    }
    double pooled = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
        std::vector<double> w(ds.n_genes());
        double mass = 0.0;
        for (std::size_t g = 0; g < ds.n_genes(); ++g) mass += (w[g] = r.u(g, k));
        const auto mo = oracle::weighted_moments(xs, w);
        CHECK(p.mu[k] == doctest::Approx(mo.mean).epsilon(1e-12));
        CHECK(p.tau[k] == doctest::Approx(mass / ds.n_genes()).epsilon(1e-12));
        pooled += p.tau[k] * mo.var;
    }
    CHECK(p.sigma2 == doctest::Approx(pooled).epsilon(1e-12));
    p.validate();
}

TEST_CASE("M-step is a stationary point of the expected objective") {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const auto ds = oracle::random_dataset(seed, 12, 2, 1, 3);
        const auto r = oracle::random_resp(seed + 100, ds, 3, 3);
        auto p = m_step(ds, r);
        const double q0 = oracle::expected_objective(ds, r, p);
        const double h = 1e-5;
        auto check_scalar = [&](double& slot) {
            const double keep = slot;
            slot = keep + h;
            const double up = oracle::expected_objective(ds, r, p);
            slot = keep - h;
            const double down = oracle::expected_objective(ds, r, p);
            slot = keep;
            CHECK(std::abs((up - down) / (2 * h)) < 1e-4);
            CHECK(up <= q0 + 1e-12);
            CHECK(down <= q0 + 1e-12);
        };
        for (auto& v : p.mu) check_scalar(v);
        for (auto& v : p.lambda) check_scalar(v);
        check_scalar(p.sigma2);
        check_scalar(p.rho2);
    }
}

TEST_CASE("M-step errors and fallbacks") {
    QuietLog quiet;
    const auto ds = make_ds({{0}, {1}, {2}}, {0, 1}, {{0}, {1}});
    SUBCASE("empty gene component") {
        const auto r = hard(ds, 3, 2, {0, 0, 1}, {0, 1});
        try {
            m_step(ds, r);
            FAIL("expected DegenerateClusterError");
        } catch (const DegenerateClusterError& e) {
            CHECK(e.layer() == ClusterLayer::gene);
            CHECK(e.index() == 2);
        }
    }
    SUBCASE("empty CpG component") {
        const auto r = hard(ds, 2, 3, {0, 1, 1}, {0, 0});
        try {
            m_step(ds, r);
            FAIL("expected DegenerateClusterError");
        } catch (const DegenerateClusterError& e) {
            CHECK(e.layer() == ClusterLayer::cpg);
        }
    }
    SUBCASE("gene component without CpGs gets a uniform pi column") {
        const auto r = hard(ds, 2, 2, {0, 0, 1}, {0, 1});
        const auto p = m_step(ds, r);
        CHECK(p.pi(0, 1) == 0.5);
        CHECK(p.pi(1, 1) == 0.5);
    }
}

TEST_CASE("parameter validation") {
    auto p = oracle::random_params(1, 3, 3);
    p.validate();
    auto bad = p;
    bad.tau[0] += 1e-6;
    CHECK_THROWS_AS(bad.validate(), ParameterError);
    bad = p;
    bad.pi(0, 1) += 1e-6;
    CHECK_THROWS_AS(bad.validate(), ParameterError);
    bad = p;
    bad.sigma2 = 0.0;
    CHECK_THROWS_AS(bad.validate(), ParameterError);
    bad = p;
    bad.rho2 = -1.0;
    CHECK_THROWS_AS(bad.validate(), ParameterError);
    CHECK(p.max_abs_diff(p) == 0.0);
    bad = p;
    bad.lambda[2] += 0.25;
    CHECK(p.max_abs_diff(bad) == doctest::Approx(0.25));
}

// ---------------------------------------------------------------- E-step

TEST_CASE("E-step with K = L = 1") {
    const auto ds = oracle::random_dataset(4, 6, 2, 0, 3);
    JointParams p{1, 1, {1.0}, Matrix(1, 1), {0.0}, 1.0, {0.0}, 1.0};
    p.pi(0, 0) = 1.0;
    const auto r = e_step_fixed_point(ds, p, initialize_quantile(ds, 1, 1));
    for (double v : r.u.data()) CHECK(v == 1.0);
    for (double v : r.v.data()) CHECK(v == 1.0);
    for (double v : r.uv.data()) CHECK(v == 1.0);
}

TEST_CASE("E-step: gene without CpGs at the midpoint") {
    const auto ds = make_ds({{1.0}, {5.0}}, {1, 1}, {{0.0}, {2.0}});
    JointParams p{2, 2, {0.5, 0.5}, Matrix(2, 2), {0.0, 2.0}, 1.0, {0.0, 2.0}, 1.0};
    p.pi(0, 0) = 0.7;
    p.pi(1, 0) = 0.3;
    p.pi(0, 1) = 0.2;
    p.pi(1, 1) = 0.8;
    const auto r = e_step_fixed_point(ds, p, initialize_quantile(ds, 2, 2, 0.1));
    CHECK(r.u(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(r.u(0, 1) == doctest::Approx(0.5).epsilon(1e-14));
    // a gene with no CpGs gets the plain mixture responsibility
    const auto exact = exact_gene_posterior(ds, p, 0);
    CHECK(exact.u[0] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("E-step: one CpG, close to the exact posterior") {
    JointParams p{2, 2, {0.4, 0.6}, Matrix(2, 2), {-2.0, 2.0}, 1.0, {-3.0, 3.0}, 1.0};
    p.pi(0, 0) = 0.8;
    p.pi(1, 0) = 0.2;
    p.pi(0, 1) = 0.3;
    p.pi(1, 1) = 0.7;
    {
        const auto ds = make_ds({{0.4, 1.1}}, {0}, {{2.5, 3.4}});
        const auto r = e_step_fixed_point(ds, p, hard(ds, 2, 2, {0}, {0}));
        const auto exact = exact_gene_posterior(ds, p, 0);
        CHECK(std::abs(r.u(0, 0) - exact.u[0]) < 1e-3);
        CHECK(std::abs(r.v(0, 0) - exact.v(0, 0)) < 1e-3);
    }
    {
        // A CpG halfway between its components: the soft exponents are a
        // geometric rather than arithmetic mean over l, and the gap shows.
        const auto ds = make_ds({{0.4, 1.1}}, {0}, {{0.1, -0.1}});
        const auto r = e_step_fixed_point(ds, p, hard(ds, 2, 2, {0}, {0}));
        const auto exact = exact_gene_posterior(ds, p, 0);
        MESSAGE("ambiguous CpG: |u - exact| = " << std::abs(r.u(0, 0) - exact.u[0]));
        CHECK(std::abs(r.u(0, 0) - exact.u[0]) < 0.1);
    }
}

TEST_CASE("E-step with equal pi columns equals plain mixture responsibilities") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto ds = oracle::random_dataset(seed, 8, 3, 0, 4);
        const auto p = equal_column_params(oracle::random_params(seed, 3, 3));
        const auto r = e_step_fixed_point(ds, p, oracle::random_resp(seed, ds, 3, 3));
        std::vector<double> pi_col(3);
        for (std::size_t l = 0; l < 3; ++l) pi_col[l] = p.pi(l, 0);
        for (std::size_t g = 0; g < ds.n_genes(); ++g) {
            const auto ref = oracle::mixture_resp(ds.gene_values(g), p.tau, p.mu, p.sigma2);
            for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(r.u(g, k) - ref[k]) < 1e-10);
            const auto exact = exact_gene_posterior(ds, p, g);
            for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(r.u(g, k) - exact.u[k]) < 1e-10);
        }
        for (std::size_t c = 0; c < ds.n_cpgs(); ++c) {
            const auto ref = oracle::mixture_resp(ds.cpg_values(c), pi_col, p.lambda, p.rho2);
            for (std::size_t l = 0; l < 3; ++l) CHECK(std::abs(r.v(c, l) - ref[l]) < 1e-10);
        }
    }
}

TEST_CASE("E-step rows are distributions and uv is the product") {
    const auto ds = oracle::random_dataset(9, 10, 2, 0, 5);
    const auto p = oracle::random_params(9, 3, 3);
    EStepStats stats;
    const auto r = e_step_fixed_point(ds, p, initialize_quantile(ds, 3, 3), {}, &stats);
    for (std::size_t g = 0; g < ds.n_genes(); ++g) {
        double s = 0;
        for (std::size_t k = 0; k < 3; ++k) s += r.u(g, k);
        CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    }
    for (std::size_t c = 0; c < ds.n_cpgs(); ++c) {
        for (std::size_t k = 0; k < 3; ++k) {
            for (std::size_t l = 0; l < 3; ++l) {
                CHECK(r.joint(c, k, l) == doctest::Approx(r.u(ds.gene_of(c), k) * r.v(c, l)));
            }
        }
    }
    CHECK(stats.max_inner_iters >= 1);
    CHECK(stats.max_inner_iters <= 50);
}

TEST_CASE("E-step reports non-finite densities") {
    const auto ds = make_ds({{1.0}}, {0}, {{0.0}});
    JointParams p{1, 1, {1.0}, Matrix(1, 1), {0.0}, 0.0, {0.0}, 1.0};
    p.pi(0, 0) = 1.0;
    CHECK_THROWS_AS(e_step_fixed_point(ds, p, initialize_quantile(ds, 1, 1)), NumericalError);
}

// ---------------------------------------------------------------- exact posterior

TEST_CASE("exact posterior equals literal enumeration") {
    // K = L = 3, C_g = 2, N = 2
    const auto ds = make_ds({{0.3, -1.2}}, {0, 0}, {{1.5, 0.2}, {-0.7, -2.0}});
    const auto p = oracle::random_params(17, 3, 3);
    const auto a = exact_gene_posterior(ds, p, 0);
    const auto b = oracle::brute_force_posterior(ds, p, 0);
    for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(a.u[k] - b.u[k]) < 1e-10);
    CHECK(max_diff(a.v, b.v) < 1e-10);
    CHECK(max_diff(a.uv, b.uv) < 1e-10);
    CHECK(std::abs(a.log_marginal - b.log_marginal) < 1e-10);
}

TEST_CASE("exact posterior on random tiny instances") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto ds = oracle::random_dataset(seed, 3, 2, 0, 4);
        const auto p = oracle::random_params(seed * 7, 3, 2);
        double total = 0.0;
        for (std::size_t g = 0; g < ds.n_genes(); ++g) {
            const auto a = exact_gene_posterior(ds, p, g);
            const auto b = oracle::brute_force_posterior(ds, p, g);
            for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(a.u[k] - b.u[k]) < 1e-10);
            CHECK(max_diff(a.uv, b.uv) < 1e-10);
            total += b.log_marginal;
        }
        CHECK(observed_log_likelihood(ds, p) == doctest::Approx(total).epsilon(1e-12));
    }
}

// ---------------------------------------------------------------- MAP and Bayes inversion

TEST_CASE("MAP assignment") {
    Matrix r(3, 3);
    r(0, 0) = 0.1;
    r(0, 1) = 0.7;
    r(0, 2) = 0.2;
    r(1, 0) = 0.5;
    r(1, 1) = 0.5;
    r(2, 2) = 1.0;
    const auto m = map_assign(r);
    CHECK(m.labels == std::vector<std::size_t>{1, 0, 2});
    CHECK(m.uncertainty[0] == doctest::Approx(0.3));
    CHECK(m.uncertainty[1] == doctest::Approx(0.5));
    CHECK(m.uncertainty[2] == 0.0);
}

TEST_CASE("gene given CpG cluster") {
    SUBCASE("equal columns give tau") {
        const auto p = equal_column_params(oracle::random_params(3, 3, 3));
        const auto m = gene_given_cpg(p);
        for (std::size_t l = 0; l < 3; ++l) {
            for (std::size_t k = 0; k < 3; ++k) CHECK(m(k, l) == doctest::Approx(p.tau[k]));
        }
    }
    SUBCASE("deterministic coupling") {
        JointParams p{2, 2, {0.5, 0.5}, Matrix(2, 2), {0, 1}, 1, {0, 1}, 1};
        p.pi(0, 0) = 1;
        p.pi(1, 1) = 1;
        const auto m = gene_given_cpg(p);
        CHECK(m(0, 0) == 1.0);
        CHECK(m(1, 1) == 1.0);
        CHECK(m(0, 1) == 0.0);
        CHECK(m(1, 0) == 0.0);
    }
    SUBCASE("hand Bayes") {
        JointParams p{2, 2, {0.2, 0.8}, Matrix(2, 2), {0, 1}, 1, {0, 1}, 1};
        p.pi(0, 0) = 0.5;
        p.pi(1, 0) = 0.5;
        p.pi(0, 1) = 0.25;
        p.pi(1, 1) = 0.75;
        const auto m = gene_given_cpg(p);
        CHECK(m(0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
        CHECK(m(0, 0) + m(1, 0) == doctest::Approx(1.0));
    }
    SUBCASE("CpG component with no mass") {
        JointParams p{2, 2, {0.5, 0.5}, Matrix(2, 2), {0, 1}, 1, {0, 1}, 1};
        p.pi(0, 0) = 1;
        p.pi(0, 1) = 1;
        CHECK_THROWS_AS(gene_given_cpg(p), NumericalError);
    }
}

// ---------------------------------------------------------------- full fit

namespace {

PairedDataset simulated(int pi_case, std::uint64_t seed, std::size_t genes = 500) {
    SimConfig cfg;
    cfg.pi_case = pi_case;
    cfg.seed = seed;
    cfg.genes = genes;
    return to_dataset(preprocess(simulate(cfg).raw));
}

}  // namespace

TEST_CASE("fit converges on well separated simulated data") {
    const auto ds = simulated(2, 1);
    const auto f = fit(ds);
    CHECK(f.converged);
    CHECK(f.n_outer_iters <= 500);
    CHECK(f.param_change_trace.size() == f.n_outer_iters);
    CHECK(f.param_change_trace.back() < 1e-5);
    f.params.validate();
    // relabelled: ascending means
    CHECK(f.params.mu[0] < f.params.mu[1]);
    CHECK(f.params.mu[1] < f.params.mu[2]);
    CHECK(f.params.lambda[0] < f.params.lambda[1]);
    CHECK(f.params.lambda[1] < f.params.lambda[2]);
    CHECK(f.gene_map.labels.size() == ds.n_genes());
    CHECK(f.cpg_map.labels.size() == ds.n_cpgs());
}

TEST_CASE("outer_max = 0 returns the initialisation") {
    QuietLog quiet;
    const auto ds = simulated(1, 2, 200);
    FitOptions o;
    o.outer_max = 0;
    const auto f = fit(ds, o);
    CHECK_FALSE(f.converged);
    CHECK(f.n_outer_iters == 0);
    const auto init = m_step(ds, initialize_quantile(ds, 3, 3));
    CHECK(f.params.max_abs_diff(init) < 1e-12);
}

TEST_CASE("fit is deterministic and thread-count independent") {
    const auto ds = simulated(1, 3, 300);
    FitOptions o1;
    FitOptions o2;
    o2.threads = 2;
    const auto a = fit(ds, o1);
    const auto b = fit(ds, o1);
    const auto c = fit(ds, o2);
    CHECK(a.params.max_abs_diff(b.params) == 0.0);
    CHECK(a.params.max_abs_diff(c.params) == 0.0);
    CHECK(a.resp.u == c.resp.u);
    CHECK(a.resp.v == c.resp.v);
}

TEST_CASE("fit does not depend on the initial label names") {
    const auto ds = simulated(2, 4, 300);
    const auto init = initialize_quantile(ds, 3, 3);
    // Swap gene components 0 and 2 and CpG components 0 and 1.
    Responsibilities perm = init;
    for (std::size_t g = 0; g < ds.n_genes(); ++g) {
        perm.u(g, 0) = init.u(g, 2);
        perm.u(g, 2) = init.u(g, 0);
    }
    for (std::size_t c = 0; c < ds.n_cpgs(); ++c) {
        perm.v(c, 0) = init.v(c, 1);
        perm.v(c, 1) = init.v(c, 0);
    }
    set_product_joint(ds, perm);
    const auto a = fit_from(ds, init);
    const auto b = fit_from(ds, perm);
    CHECK(a.params.max_abs_diff(b.params) < 1e-9);
    CHECK(a.gene_map.labels == b.gene_map.labels);
    CHECK(a.cpg_map.labels == b.cpg_map.labels);
}

TEST_CASE("pinned pi reproduces the independent baseline") {
    const auto ds = simulated(1, 5, 200);
    FitOptions o;
    o.pin_pi_equal = true;
    o.outer_tol = 1e-13;
    o.outer_max = 5000;
    const auto j = fit(ds, o);
    IndependentOptions io;
    io.tol = 1e-13;
    io.max_iter = 5000;
    const auto gi = fit_independent(gene_matrix(ds), io);
    const auto ci = fit_independent(cpg_matrix(ds), io);
    CHECK(max_diff(j.resp.u, gi.resp) < 1e-8);
    CHECK(max_diff(j.resp.v, ci.resp) < 1e-8);
    CHECK(j.gene_map.labels == gi.map.labels);
}

TEST_CASE("fit preconditions") {
    const auto ds = make_ds({{0}, {1}}, {0, 1, 1}, {{0}, {1}, {2}});
    CHECK_THROWS_AS(fit(ds), ParameterError);
    FitOptions o;
    o.K = 2;
    o.L = 4;
    CHECK_THROWS_AS(fit(ds, o), ParameterError);
}
