#pragma once

#include "jointmix/joint_em.hpp"
#include "jointmix/preprocess.hpp"
#include "jointmix/simulator.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace jointmix {

// FDR, sensitivity and specificity on the differential-vs-null collapse of
// three-class labels (label kNull is the null class, anything else is a
// positive). An empty optional is the undefined marker for a 0/0 ratio.
struct MetricReport {
    std::optional<double> fdr;
    std::optional<double> sensitivity;
    std::optional<double> specificity;
    std::optional<double> ari;
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t tn = 0;
    std::size_t fn = 0;
};

MetricReport binary_metrics(std::span<const std::size_t> truth,
                            std::span<const std::size_t> predicted);

double three_class_ari(std::span<const std::size_t> truth, std::span<const std::size_t> predicted);

// binary_metrics plus ari.
MetricReport full_metrics(std::span<const std::size_t> truth,
                          std::span<const std::size_t> predicted);

enum class Method { joint, independent };
enum class Layer { gene, cpg };

std::string method_name(Method m);
std::string layer_name(Layer l);  // "DEG" / "DMC"

struct MetricSummary {
    double mean = 0.0;
    double sd = 0.0;  // sample standard deviation (n - 1)
    std::size_t n = 0;  // replicates where the metric was defined
};

// Mean and SD over the defined values, folded in index order.
MetricSummary summarize(std::span<const std::optional<double>> values);

struct BenchmarkOptions {
    SimConfig sim;  // pi_case, seed and sizes come from here
    std::size_t replicates = 20;
    std::vector<Method> methods{Method::joint, Method::independent};
    unsigned threads = 1;
    FitOptions fit;
    PreprocessOptions preprocess;
};

struct ReplicateOutcome {
    std::size_t replicate = 0;
    std::string error;  // non-empty when the replicate failed
    // Indexed [method][layer] following BenchmarkOptions::methods.
    std::vector<std::array<MetricReport, 2>> reports;
    // ARI between the joint and independent MAP partitions, when both ran.
    std::optional<double> agreement_gene;
    std::optional<double> agreement_cpg;
};

struct BenchmarkRow {
    std::string method;  // "joint", "independent", or "joint_vs_independent"
    std::string layer;
    std::string metric;
    MetricSummary summary;
};

struct BenchmarkResult {
    BenchmarkOptions options;
    std::vector<ReplicateOutcome> replicates;
    std::vector<BenchmarkRow> rows;
    std::size_t failures = 0;

    const BenchmarkRow* find(std::string_view method, std::string_view layer,
                             std::string_view metric) const;
};

// Scores one replicate end to end: simulate, preprocess, fit, compare with
// the truth. Fit failures are caught and stored in `error`.
ReplicateOutcome score_replicate(const BenchmarkOptions& opts, std::size_t replicate);

// Aggregates replicate outcomes (failed ones excluded and counted).
BenchmarkResult aggregate(BenchmarkOptions opts, std::vector<ReplicateOutcome> outcomes);

// Runs all replicates on up to opts.threads threads. Output does not depend
// on the thread count. ParameterError if fewer than 2 replicates.
BenchmarkResult run_benchmark(const BenchmarkOptions& opts);

std::string benchmark_tsv(const BenchmarkResult& r);
std::string replicate_tsv(const BenchmarkResult& r);
nlohmann::json benchmark_json(const BenchmarkResult& r);

}  // namespace jointmix
