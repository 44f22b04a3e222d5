#include "jointmix/evaluation.hpp"

#include "jointmix/baseline.hpp"
#include "jointmix/chromosome_fit.hpp"
#include "jointmix/error.hpp"
#include "jointmix/parallel.hpp"

#include <fmt/format.h>

#include <cmath>
#include <unordered_map>

namespace jointmix {
namespace {

std::optional<double> ratio(std::size_t num, std::size_t den) {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
}

void require_same_length(std::span<const std::size_t> a, std::span<const std::size_t> b) {
    if (a.size() != b.size()) {
        throw ShapeError(fmt::format("truth has {} labels, prediction has {}", a.size(), b.size()));
    }
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt::format("{}", *v) : "NA"; }

nlohmann::json json_opt(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

struct LayerLabels {
    std::vector<std::size_t> truth;
    std::vector<std::size_t> joint;
    std::vector<std::size_t> independent;
};

}  // namespace

MetricReport binary_metrics(std::span<const std::size_t> truth,
                            std::span<const std::size_t> predicted) {
    require_same_length(truth, predicted);
    MetricReport r;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const bool actual = truth[i] != kNull;
        const bool called = predicted[i] != kNull;
        if (called && actual) ++r.tp;
        else if (called) ++r.fp;
        else if (actual) ++r.fn;
        else ++r.tn;
    }
    r.fdr = ratio(r.fp, r.tp + r.fp);
    r.sensitivity = ratio(r.tp, r.tp + r.fn);
    r.specificity = ratio(r.tn, r.tn + r.fp);
    return r;
}

double three_class_ari(std::span<const std::size_t> truth, std::span<const std::size_t> predicted) {
    require_same_length(truth, predicted);
    return compare_partitions(truth, predicted);
}

MetricReport full_metrics(std::span<const std::size_t> truth,
                          std::span<const std::size_t> predicted) {
    MetricReport r = binary_metrics(truth, predicted);
    r.ari = three_class_ari(truth, predicted);
    return r;
}

std::string method_name(Method m) { return m == Method::joint ? "joint" : "independent"; }
std::string layer_name(Layer l) { return l == Layer::gene ? "DEG" : "DMC"; }

MetricSummary summarize(std::span<const std::optional<double>> values) {
    MetricSummary s;
    double sum = 0.0;
    for (const auto& v : values) {
        if (!v) continue;
        sum += *v;
        ++s.n;
    }
    if (s.n == 0) return s;
    s.mean = sum / static_cast<double>(s.n);
    if (s.n > 1) {
        double ss = 0.0;
        for (const auto& v : values) {
            if (v) ss += (*v - s.mean) * (*v - s.mean);
        }
        s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
    }
    return s;
}

const BenchmarkRow* BenchmarkResult::find(std::string_view method, std::string_view layer,
                                          std::string_view metric) const {
    for (const auto& row : rows) {
        if (row.method == method && row.layer == layer && row.metric == metric) return &row;
    }
    return nullptr;
}

ReplicateOutcome score_replicate(const BenchmarkOptions& opts, std::size_t replicate) {
    ReplicateOutcome out;
    out.replicate = replicate;
    out.reports.resize(opts.methods.size());
    try {
        const Simulation sim = simulate(opts.sim, replicate);
        const PairedDataset ds = to_dataset(preprocess(sim.raw, opts.preprocess));

        std::unordered_map<std::string, std::size_t> gene_truth;
        for (std::size_t g = 0; g < sim.truth.gene_labels.size(); ++g) {
            gene_truth.emplace(sim.raw.expression_a.genes[g].gene_id, sim.truth.gene_labels[g]);
        }
        std::unordered_map<std::string, std::size_t> cpg_truth;
        for (std::size_t c = 0; c < sim.truth.cpg_labels.size(); ++c) {
            cpg_truth.emplace(sim.raw.methylation_a.cpgs[c].cpg_id, sim.truth.cpg_labels[c]);
        }

        LayerLabels genes;
        LayerLabels cpgs;
        for (const auto& g : ds.genes()) genes.truth.push_back(gene_truth.at(g.gene_id));
        for (const auto& c : ds.cpgs()) cpgs.truth.push_back(cpg_truth.at(c.cpg_id));

        bool ran_joint = false;
        bool ran_indep = false;
        for (std::size_t m = 0; m < opts.methods.size(); ++m) {
            if (opts.methods[m] == Method::joint) {
                std::unordered_map<std::string, std::size_t> gene_pred;
                std::unordered_map<std::string, std::size_t> cpg_pred;
                for (const auto& part : fit_all_chromosomes(ds, 1, opts.fit)) {
                    if (!part.result) {
                        throw NumericalError(
                            fmt::format("chromosome {}: {}", part.chromosome, part.error));
                    }
                    for (std::size_t g = 0; g < part.data.n_genes(); ++g) {
                        gene_pred.emplace(part.data.gene(g).gene_id, part.result->gene_map.labels[g]);
                    }
                    for (std::size_t c = 0; c < part.data.n_cpgs(); ++c) {
                        cpg_pred.emplace(part.data.cpg(c).cpg_id, part.result->cpg_map.labels[c]);
                    }
                }
                for (const auto& g : ds.genes()) genes.joint.push_back(gene_pred.at(g.gene_id));
                for (const auto& c : ds.cpgs()) cpgs.joint.push_back(cpg_pred.at(c.cpg_id));
                out.reports[m] = {full_metrics(genes.truth, genes.joint),
                                  full_metrics(cpgs.truth, cpgs.joint)};
                ran_joint = true;
            } else {
                IndependentOptions io;
                io.K = opts.fit.K;
                io.quantile = opts.fit.quantile;
                io.tol = opts.fit.outer_tol;
                io.max_iter = opts.fit.outer_max;
                genes.independent = fit_independent(gene_matrix(ds), io).map.labels;
                io.K = opts.fit.L;
                cpgs.independent = fit_independent(cpg_matrix(ds), io).map.labels;
                out.reports[m] = {full_metrics(genes.truth, genes.independent),
                                  full_metrics(cpgs.truth, cpgs.independent)};
                ran_indep = true;
            }
        }
        if (ran_joint && ran_indep) {
            out.agreement_gene = compare_partitions(genes.joint, genes.independent);
            out.agreement_cpg = compare_partitions(cpgs.joint, cpgs.independent);
        }
    } catch (const Error& e) {
        out.error = e.what();
    }
    return out;
}

BenchmarkResult aggregate(BenchmarkOptions opts, std::vector<ReplicateOutcome> outcomes) {
    BenchmarkResult res;
    res.options = std::move(opts);
    res.replicates = std::move(outcomes);

    std::vector<const ReplicateOutcome*> ok;
    for (const auto& r : res.replicates) {
        if (r.error.empty()) ok.push_back(&r);
        else ++res.failures;
    }

    const std::pair<const char*, std::optional<double> MetricReport::*> metrics[] = {
        {"fdr", &MetricReport::fdr},
        {"sensitivity", &MetricReport::sensitivity},
        {"specificity", &MetricReport::specificity},
        {"ari", &MetricReport::ari},
    };
    for (std::size_t m = 0; m < res.options.methods.size(); ++m) {
        for (Layer layer : {Layer::gene, Layer::cpg}) {
            for (const auto& [metric, member] : metrics) {
                std::vector<std::optional<double>> values;
                for (const auto* r : ok) {
                    values.push_back(r->reports[m][static_cast<std::size_t>(layer)].*member);
                }
                res.rows.push_back({method_name(res.options.methods[m]), layer_name(layer), metric,
                                    summarize(values)});
            }
        }
    }

    std::vector<std::optional<double>> agree_gene;
    std::vector<std::optional<double>> agree_cpg;
    for (const auto* r : ok) {
        agree_gene.push_back(r->agreement_gene);
        agree_cpg.push_back(r->agreement_cpg);
    }
    const auto sg = summarize(agree_gene);
    const auto sc = summarize(agree_cpg);
    if (sg.n > 0) res.rows.push_back({"joint_vs_independent", "DEG", "ari", sg});
    if (sc.n > 0) res.rows.push_back({"joint_vs_independent", "DMC", "ari", sc});
    return res;
}

BenchmarkResult run_benchmark(const BenchmarkOptions& opts) {
    if (opts.replicates < 2) throw ParameterError("benchmark needs at least 2 replicates");
    if (opts.methods.empty()) throw ParameterError("benchmark needs at least one method");
    opts.sim.validate();

    FitOptions fit_opts = opts.fit;
    fit_opts.threads = 1;
    BenchmarkOptions inner = opts;
    inner.fit = fit_opts;

    std::vector<ReplicateOutcome> outcomes(opts.replicates);
    parallel_for(opts.replicates, opts.threads,
                 [&](std::size_t r) { outcomes[r] = score_replicate(inner, r); });
    return aggregate(opts, std::move(outcomes));
}

std::string benchmark_tsv(const BenchmarkResult& r) {
    std::string out = "method\tlayer\tmetric\tmean\tsd\tn\n";
    for (const auto& row : r.rows) {
        out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\n", row.method, row.layer, row.metric,
                           row.summary.n > 0 ? fmt::format("{}", row.summary.mean) : "NA",
                           row.summary.n > 1 ? fmt::format("{}", row.summary.sd) : "NA",
                           row.summary.n);
    }
    return out;
}

std::string replicate_tsv(const BenchmarkResult& r) {
    std::string out = "replicate\tmethod\tlayer\tfdr\tsensitivity\tspecificity\tari\ttp\tfp\ttn\tfn\terror\n";
    for (const auto& rep : r.replicates) {
        if (!rep.error.empty()) {
            out += fmt::format("{}\tNA\tNA\tNA\tNA\tNA\tNA\tNA\tNA\tNA\tNA\t{}\n", rep.replicate,
                               rep.error);
            continue;
        }
        for (std::size_t m = 0; m < r.options.methods.size(); ++m) {
            for (Layer layer : {Layer::gene, Layer::cpg}) {
                const auto& mr = rep.reports[m][static_cast<std::size_t>(layer)];
                out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t\n", rep.replicate,
                                   method_name(r.options.methods[m]), layer_name(layer),
                                   fmt_opt(mr.fdr), fmt_opt(mr.sensitivity),
                                   fmt_opt(mr.specificity), fmt_opt(mr.ari), mr.tp, mr.fp, mr.tn,
                                   mr.fn);
            }
        }
    }
    return out;
}

nlohmann::json benchmark_json(const BenchmarkResult& r) {
    nlohmann::json j;
    j["config"] = to_json(r.options.sim);
    j["replicates"] = r.options.replicates;
    j["failures"] = r.failures;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : r.rows) {
        j["rows"].push_back({{"method", row.method},
                             {"layer", row.layer},
                             {"metric", row.metric},
                             {"mean", row.summary.n > 0 ? nlohmann::json(row.summary.mean)
                                                        : nlohmann::json(nullptr)},
                             {"sd", row.summary.n > 1 ? nlohmann::json(row.summary.sd)
                                                      : nlohmann::json(nullptr)},
                             {"n", row.summary.n}});
    }
    j["per_replicate"] = nlohmann::json::array();
    for (const auto& rep : r.replicates) {
        nlohmann::json e{{"replicate", rep.replicate}};
        if (!rep.error.empty()) e["error"] = rep.error;
        e["agreement_ari_DEG"] = json_opt(rep.agreement_gene);
        e["agreement_ari_DMC"] = json_opt(rep.agreement_cpg);
        j["per_replicate"].push_back(std::move(e));
    }
    return j;
}

}  // namespace jointmix
