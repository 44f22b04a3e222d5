#include "jointmix/error.hpp"
#include "jointmix/evaluation.hpp"
#include "jointmix/simulator.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace jointmix;

TEST_CASE("binary metrics") {
    SUBCASE("perfect prediction") {
        const std::vector<std::size_t> t{0, 1, 2, 1, 1};
        const auto m = binary_metrics(t, t);
        CHECK(*m.fdr == 0.0);
        CHECK(*m.sensitivity == 1.0);
        CHECK(*m.specificity == 1.0);
        CHECK_FALSE(m.ari.has_value());
    }
    SUBCASE("ten positives, one false") {
        std::vector<std::size_t> t(20, kNull), p(20, kNull);
        for (int i = 0; i < 9; ++i) t[i] = p[i] = kUp;
        p[9] = kDown;  // truth null
        const auto m = binary_metrics(t, p);
        CHECK(m.tp == 9);
        CHECK(m.fp == 1);
        CHECK(*m.fdr == doctest::Approx(0.1));
    }
    SUBCASE("no positives anywhere") {
        const std::vector<std::size_t> t(6, kNull);
        const auto m = binary_metrics(t, t);
        CHECK_FALSE(m.sensitivity.has_value());
        CHECK_FALSE(m.fdr.has_value());
        CHECK(*m.specificity == 1.0);
    }
    SUBCASE("swapping down and up in both changes nothing") {
        std::mt19937_64 rng(4);
        std::uniform_int_distribution<std::size_t> d(0, 2);
        std::vector<std::size_t> t(50), p(50);
        for (auto& v : t) v = d(rng);
        for (auto& v : p) v = d(rng);
        auto swap = [](std::vector<std::size_t> x) {
            for (auto& v : x) v = v == kDown ? kUp : v == kUp ? kDown : v;
            return x;
        };
        const auto a = binary_metrics(t, p);
        const auto b = binary_metrics(swap(t), swap(p));
        CHECK(*a.fdr == *b.fdr);
        CHECK(*a.sensitivity == *b.sensitivity);
        CHECK(*a.specificity == *b.specificity);
    }
    CHECK_THROWS_AS(binary_metrics(std::vector<std::size_t>{1}, std::vector<std::size_t>{1, 2}),
                    ShapeError);
}

TEST_CASE("three-class ARI") {
    const std::vector<std::size_t> t{0, 0, 1, 1, 2, 2};
    CHECK(three_class_ari(t, t) == 1.0);
    const std::vector<std::size_t> renamed{2, 2, 0, 0, 1, 1};
    CHECK(three_class_ari(t, renamed) == doctest::Approx(1.0));
    CHECK(three_class_ari(std::vector<std::size_t>{1, 1, 2, 2}, std::vector<std::size_t>{1, 2, 1, 2}) ==
          doctest::Approx(-0.5));
    CHECK(full_metrics(t, t).ari.value() == 1.0);
}

TEST_CASE("summaries against a naive accumulation") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> d(0.0, 1.0);
    std::vector<std::optional<double>> v;
    std::vector<double> defined;
    for (int i = 0; i < 37; ++i) {
        if (i % 5 == 3) {
            v.emplace_back(std::nullopt);
        } else {
            defined.push_back(d(rng));
            v.emplace_back(defined.back());
        }
    }
    double mean = 0;
    for (double x : defined) mean += x;
    mean /= defined.size();
    double ss = 0;
    for (double x : defined) ss += (x - mean) * (x - mean);
    const auto s = summarize(v);
    CHECK(s.n == defined.size());
    CHECK(s.mean == doctest::Approx(mean).epsilon(1e-14));
    CHECK(s.sd == doctest::Approx(std::sqrt(ss / (defined.size() - 1))).epsilon(1e-12));

    const std::vector<std::optional<double>> none(3);
    CHECK(summarize(none).n == 0);
}

TEST_CASE("small benchmark smoke run") {
    BenchmarkOptions o;
    o.sim.genes = 150;
    o.replicates = 2;
    const auto r = run_benchmark(o);
    CHECK(r.failures == 0);
    CHECK(r.replicates.size() == 2);
    for (const auto& row : r.rows) {
        CAPTURE(row.method);
        CAPTURE(row.metric);
        CHECK(std::isfinite(row.summary.mean));
        CHECK(std::isfinite(row.summary.sd));
    }
    REQUIRE(r.find("joint", "DEG", "ari") != nullptr);
    CHECK(r.find("joint_vs_independent", "DMC", "ari") != nullptr);
    CHECK(r.find("nope", "DEG", "ari") == nullptr);

    // aggregation equals a direct fold over the replicate reports
    std::vector<std::optional<double>> sens;
    for (const auto& rep : r.replicates) sens.push_back(rep.reports[0][0].sensitivity);
    CHECK(r.find("joint", "DEG", "sensitivity")->summary.mean == summarize(sens).mean);

    const auto tsv = benchmark_tsv(r);
    CHECK(tsv.rfind("method\tlayer\tmetric\tmean\tsd\tn\n", 0) == 0);
    CHECK(benchmark_json(r).contains("rows"));

    o.replicates = 1;
    CHECK_THROWS_AS(run_benchmark(o), ParameterError);
}

TEST_CASE("benchmark output does not depend on the thread count") {
    BenchmarkOptions o;
    o.sim.genes = 120;
    o.replicates = 3;
    o.threads = 1;
    const auto a = run_benchmark(o);
    o.threads = 3;
    const auto b = run_benchmark(o);
    CHECK(benchmark_tsv(a) == benchmark_tsv(b));
    CHECK(replicate_tsv(a) == replicate_tsv(b));
}
