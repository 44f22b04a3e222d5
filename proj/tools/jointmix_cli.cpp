// jointmix command line: preprocess, simulate, fit, baseline, evaluate,
// benchmark and timing. Every run writes manifest.json next to its outputs.

#include "jointmix/baseline.hpp"
#include "jointmix/chromosome_fit.hpp"
#include "jointmix/dataset.hpp"
#include "jointmix/error.hpp"
#include "jointmix/evaluation.hpp"
#include "jointmix/kernels.hpp"
#include "jointmix/log.hpp"
#include "jointmix/preprocess.hpp"
#include "jointmix/results_io.hpp"
#include "jointmix/simulator.hpp"
#include "jointmix/timing.hpp"
#include "jointmix/tsv.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace jointmix;
using nlohmann::json;

#ifndef JOINTMIX_VERSION
#define JOINTMIX_VERSION "unknown"
#endif

namespace {

enum Exit { ok = 0, input_failure = 1, numerical_failure = 2, partial_failure = 3 };

struct Globals {
    unsigned threads = 1;
    std::uint64_t seed = 1;
    std::string out;
    bool force = false;
    std::string log_level = "warn";
    std::string kernels = "auto";
    PreprocessOptions pre;
};

std::string sha256_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError(fmt::format("cannot open '{}'", path.string()));
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    std::vector<char> buf(1 << 16);
    while (in) {
        in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
        EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, md, &len);
    EVP_MD_CTX_free(ctx);
    std::string hex;
    for (unsigned i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
    return hex;
}

class Run {
public:
    Run(std::string subcommand, const Globals& g)
        : g_(g), start_(std::chrono::steady_clock::now()) {
        manifest_["subcommand"] = std::move(subcommand);
        manifest_["version"] = JOINTMIX_VERSION;
        manifest_["threads"] = g.threads;
        manifest_["seed"] = g.seed;
        manifest_["kernels"] = std::string(kernels::name(kernels::active().backend));
        manifest_["parameters"] = json::object();
        manifest_["inputs"] = json::object();
        manifest_["outputs"] = json::array();
    }

    json& params() { return manifest_["parameters"]; }

    void input(const std::string& role, const fs::path& path) {
        manifest_["inputs"][role] = {{"path", path.string()}, {"sha256", sha256_file(path)}};
    }

    fs::path out_dir() const { return g_.out; }

    // Refuses a non-empty output directory unless --force was given.
    void prepare_out() {
        const fs::path dir = g_.out;
        if (fs::exists(dir) && !fs::is_directory(dir)) {
            throw FormatError(fmt::format("--out '{}' is not a directory", dir.string()));
        }
        if (fs::exists(dir) && !fs::is_empty(dir) && !g_.force) {
            throw FormatError(
                fmt::format("output directory '{}' is not empty (use --force)", dir.string()));
        }
        fs::create_directories(dir);
        prepared_ = true;
    }

    void write(const std::string& name, const std::string& text) {
        write_text(out_dir() / name, text);
        manifest_["outputs"].push_back(name);
    }

    // Failed runs still leave a manifest, unless the directory was refused.
    int fail(int code, const std::string& what) {
        if (!prepared_) return code;
        manifest_["error"] = what;
        try {
            return finish(code);
        } catch (const std::exception&) {
            return code;
        }
    }

    void written(const std::string& name) { manifest_["outputs"].push_back(name); }

    int finish(int code) {
        manifest_["exit_code"] = code;
        manifest_["duration_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        write_text(out_dir() / "manifest.json", manifest_.dump(2) + '\n');
        return code;
    }

private:
    const Globals& g_;
    std::chrono::steady_clock::time_point start_;
    json manifest_;
    bool prepared_ = false;
};

json preprocess_json(const PreprocessOptions& p) {
    return {{"pseudocount", p.pseudocount},
            {"beta_eps", p.beta_eps},
            {"count_threshold", p.count_threshold}};
}

// Input files shared by fit and baseline: either transformed tables, or the
// four raw condition files which are preprocessed on the fly.
struct InputArgs {
    std::string expression, methylation;
    std::string expression_a, expression_b, methylation_a, methylation_b;
    std::string mode = "strict";

    void add_to(CLI::App* sub) {
        sub->add_option("--expression", expression, "log-fold change table (transformed input)");
        sub->add_option("--methylation", methylation, "M-value difference table (transformed input)");
        sub->add_option("--expression-a", expression_a, "raw counts, condition A");
        sub->add_option("--expression-b", expression_b, "raw counts, condition B");
        sub->add_option("--methylation-a", methylation_a, "raw beta values, condition A");
        sub->add_option("--methylation-b", methylation_b, "raw beta values, condition B");
        sub->add_option("--mode", mode, "orphan CpG handling")
            ->check(CLI::IsMember({"strict", "lenient"}));
    }

    bool raw() const {
        return !expression_a.empty() || !expression_b.empty() || !methylation_a.empty() ||
               !methylation_b.empty();
    }

    MappingMode mapping() const {
        return mode == "lenient" ? MappingMode::lenient : MappingMode::strict;
    }
};

RawPairedInput read_raw(const InputArgs& in, Run& run) {
    RawPairedInput raw;
    raw.expression_a = read_expression_tsv(in.expression_a);
    raw.expression_b = read_expression_tsv(in.expression_b);
    raw.methylation_a = read_methylation_tsv(in.methylation_a);
    raw.methylation_b = read_methylation_tsv(in.methylation_b);
    run.input("expression_a", in.expression_a);
    run.input("expression_b", in.expression_b);
    run.input("methylation_a", in.methylation_a);
    run.input("methylation_b", in.methylation_b);
    return raw;
}

PairedDataset load_inputs(const InputArgs& in, const Globals& g, Run& run) {
    auto& p = run.params();
    p["mode"] = in.mode;
    if (in.raw()) {
        if (!in.expression.empty() || !in.methylation.empty()) {
            throw ParameterError("give either --expression/--methylation or the four raw files");
        }
        if (in.expression_a.empty() || in.expression_b.empty() || in.methylation_a.empty() ||
            in.methylation_b.empty()) {
            throw ParameterError(
                "raw input needs --expression-a, --expression-b, --methylation-a and "
                "--methylation-b");
        }
        p["input"] = "raw";
        p["preprocess"] = preprocess_json(g.pre);
        auto tables = preprocess(read_raw(in, run), g.pre);
        log::info("{} genes removed by the count filter", tables.genes_filtered);
        return to_dataset(std::move(tables), in.mapping());
    }
    if (in.expression.empty() || in.methylation.empty()) {
        throw ParameterError("--expression and --methylation are required");
    }
    p["input"] = "transformed";
    run.input("expression", in.expression);
    run.input("methylation", in.methylation);
    return load_paired_dataset(in.expression, in.methylation, in.mapping());
}

struct FitArgs {
    std::size_t K = 3, L = 3;
    double quantile = 0.10;
    double tol = 1e-5;
    std::size_t max_iter = 500;
    double inner_tol = 1e-6;
    std::size_t inner_max = 50;

    void add_to(CLI::App* sub, bool joint) {
        sub->add_option("-K,--K", K, "gene clusters")->check(CLI::PositiveNumber);
        if (joint) sub->add_option("-L,--L", L, "CpG clusters")->check(CLI::PositiveNumber);
        sub->add_option("--quantile", quantile, "tail fraction for initialisation");
        sub->add_option("--tol", tol, "convergence tolerance on parameter change");
        sub->add_option("--max-iter", max_iter, "maximum EM iterations");
        if (joint) {
            sub->add_option("--inner-tol", inner_tol, "fixed-point E-step tolerance");
            sub->add_option("--inner-max", inner_max, "fixed-point E-step sweeps");
        }
    }

    FitOptions options(unsigned threads) const {
        FitOptions o;
        o.K = K;
        o.L = L;
        o.quantile = quantile;
        o.outer_tol = tol;
        o.outer_max = max_iter;
        o.inner_tol = inner_tol;
        o.inner_max = inner_max;
        o.threads = threads;
        return o;
    }

    json to_json() const {
        return {{"K", K},          {"L", L},
                {"quantile", quantile}, {"tol", tol},
                {"max_iter", max_iter}, {"inner_tol", inner_tol},
                {"inner_max", inner_max}};
    }
};

// -------------------------------------------------------------------------

int cmd_preprocess(Run& run, const Globals& g, const InputArgs& in) {
    run.prepare_out();
    run.params()["preprocess"] = preprocess_json(g.pre);
    auto tables = preprocess(read_raw(in, run), g.pre);
    run.params()["genes_filtered"] = tables.genes_filtered;
    run.params()["cpgs_of_filtered_genes"] = tables.cpgs_of_filtered_genes;
    write_expression_tsv(run.out_dir() / "expression.tsv", tables.expression);
    write_methylation_tsv(run.out_dir() / "methylation.tsv", tables.methylation);
    run.written("expression.tsv");
    run.written("methylation.tsv");
    return run.finish(ok);
}

Matrix read_pi_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError(fmt::format("cannot open '{}'", path.string()));
    Matrix pi(3, 3);
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (row == 3) throw FormatError(fmt::format("'{}': more than 3 rows", path.string()));
        std::istringstream fields(line);
        std::string f;
        std::size_t col = 0;
        while (fields >> f) {
            if (col == 3) break;
            pi(row, col++) = tsv::parse_double(f, path.string());
        }
        if (col != 3 || fields >> f) {
            throw FormatError(fmt::format("'{}': row {} needs 3 values", path.string(), row + 1));
        }
        ++row;
    }
    if (row != 3) throw FormatError(fmt::format("'{}': needs 3 rows", path.string()));
    return pi;
}

struct SimArgs {
    int pi_case = 1;
    std::string pi_file;
    std::size_t genes = 500;
    std::size_t patients = 4;
    std::size_t chromosomes = 1;

    void add_to(CLI::App* sub) {
        sub->add_option("--case", pi_case, "dependency setting")->check(CLI::Range(1, 3));
        sub->add_option("--pi-file", pi_file, "explicit 3x3 pi (rows M-,M0,M+; cols E-,E0,E+)");
        sub->add_option("--genes", genes, "genes per replicate");
        sub->add_option("--patients", patients, "patients per replicate");
        sub->add_option("--chromosomes", chromosomes, "chromosomes the genes are spread over");
    }

    SimConfig config(const Globals& g, Run* run) const {
        SimConfig cfg;
        cfg.genes = genes;
        cfg.patients = patients;
        cfg.chromosomes = chromosomes;
        cfg.seed = g.seed;
        cfg.pi_case = pi_case;
        if (!pi_file.empty()) {
            cfg.pi_case = 0;
            cfg.pi = read_pi_file(pi_file);
            if (run) run->input("pi_file", pi_file);
        }
        cfg.validate();
        return cfg;
    }
};

int cmd_simulate(Run& run, const Globals& g, const SimArgs& sa, std::size_t replicates) {
    run.prepare_out();
    const SimConfig cfg = sa.config(g, &run);
    run.params()["config"] = to_json(cfg);
    run.params()["replicates"] = replicates;
    const auto batch = replicate_batch(cfg, replicates);
    for (std::size_t r = 0; r < batch.size(); ++r) {
        const std::string sub = replicates == 1 ? std::string() : fmt::format("replicate_{:03}", r);
        write_simulation(batch[r], run.out_dir() / sub);
        run.written(sub.empty() ? "." : sub);
    }
    return run.finish(ok);
}

int cmd_fit(Run& run, const Globals& g, const InputArgs& in, const FitArgs& fa) {
    run.prepare_out();
    const PairedDataset ds = load_inputs(in, g, run);
    run.params()["fit"] = fa.to_json();
    const FitOptions opts = fa.options(g.threads);

    const auto fits = fit_all_chromosomes(ds, g.threads, opts);
    std::string genes = gene_results_header(opts.K);
    std::string cpgs = cpg_results_header(opts.L);
    std::size_t failed = 0;
    bool any_input_error = false;
    for (const auto& f : fits) {
        if (!f.result) {
            ++failed;
            any_input_error = any_input_error || f.input_error;
            log::write(log::Level::error, fmt::format("chromosome {}: {}", f.chromosome, f.error));
            continue;
        }
        genes += gene_results_rows(f.data, f.result->resp.u, f.result->gene_map);
        cpgs += cpg_results_rows(f.data, f.result->resp.v, f.result->cpg_map);
        if (!f.result->converged) {
            log::warn("chromosome {}: no convergence after {} iterations", f.chromosome,
                      f.result->n_outer_iters);
        }
    }
    run.write("model.json", chromosome_fits_to_json(fits, opts.K, opts.L).dump(2) + '\n');
    run.write("gene_results.tsv", genes);
    run.write("cpg_results.tsv", cpgs);

    int code = ok;
    if (failed == fits.size()) {
        code = any_input_error ? input_failure : numerical_failure;
    } else if (failed > 0) {
        code = partial_failure;
    }
    run.params()["failed_chromosomes"] = failed;
    return run.finish(code);
}

int cmd_baseline(Run& run, const Globals& g, const InputArgs& in, const FitArgs& fa,
                 const std::string& layer) {
    run.prepare_out();
    const PairedDataset ds = load_inputs(in, g, run);
    run.params()["fit"] = fa.to_json();
    run.params()["layer"] = layer;
    IndependentOptions opts;
    opts.K = fa.K;
    opts.quantile = fa.quantile;
    opts.tol = fa.tol;
    opts.max_iter = fa.max_iter;

    const bool genes = layer == "expression";
    const IndependentFit f = fit_independent(genes ? gene_matrix(ds) : cpg_matrix(ds), opts);
    if (!f.converged) log::warn("no convergence after {} iterations", f.n_iters);
    json model{{"layer", layer},
               {"K", opts.K},
               {"weights", f.params.weights},
               {"means", f.params.means},
               {"variance", f.params.variance},
               {"n_iters", f.n_iters},
               {"converged", f.converged}};
    run.write("model.json", model.dump(2) + '\n');
    if (genes) {
        run.write("gene_results.tsv", gene_results_header(opts.K) + gene_results_rows(ds, f.resp, f.map));
    } else {
        run.write("cpg_results.tsv", cpg_results_header(opts.K) + cpg_results_rows(ds, f.resp, f.map));
    }
    return run.finish(ok);
}

std::string opt_text(const std::optional<double>& v) {
    return v ? tsv::format_double(*v) : "NA";
}

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

int cmd_evaluate(Run& run, const std::string& truth_path, const std::string& pred_path,
                 const std::string& layer) {
    run.prepare_out();
    run.params()["layer"] = layer;
    const auto truth = read_truth(truth_path);
    const auto predicted = read_predicted_labels(pred_path);
    run.input("truth", truth_path);
    run.input("predicted", pred_path);

    // Sorted ids keep the paired vectors independent of hash order.
    std::vector<std::string> ids;
    ids.reserve(predicted.size());
    for (const auto& [id, label] : predicted) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    std::vector<std::size_t> t, p;
    for (const auto& id : ids) {
        const auto it = truth.find(id);
        if (it == truth.end()) {
            throw MappingError(fmt::format("'{}' has no truth label for '{}'", pred_path, id));
        }
        t.push_back(it->second);
        p.push_back(predicted.at(id));
    }
    const MetricReport m = full_metrics(t, p);
    const std::string name = layer == "gene" ? "DEG" : "DMC";
    std::string text = "layer\tmetric\tvalue\n";
    text += fmt::format("{}\tFDR\t{}\n", name, opt_text(m.fdr));
    text += fmt::format("{}\tsensitivity\t{}\n", name, opt_text(m.sensitivity));
    text += fmt::format("{}\tspecificity\t{}\n", name, opt_text(m.specificity));
    text += fmt::format("{}\tARI\t{}\n", name, opt_text(m.ari));
    run.write("metrics.tsv", text);
    json j{{"layer", name},
           {"n", t.size()},
           {"fdr", opt_json(m.fdr)},
           {"sensitivity", opt_json(m.sensitivity)},
           {"specificity", opt_json(m.specificity)},
           {"ari", opt_json(m.ari)},
           {"tp", m.tp},
           {"fp", m.fp},
           {"tn", m.tn},
           {"fn", m.fn}};
    run.write("metrics.json", j.dump(2) + '\n');
    return run.finish(ok);
}

std::vector<Method> parse_methods(const std::vector<std::string>& names) {
    std::vector<Method> out;
    for (const auto& n : names) {
        if (n == "joint") {
            out.push_back(Method::joint);
        } else if (n == "independent") {
            out.push_back(Method::independent);
        } else {
            throw ParameterError(fmt::format("unknown method '{}'", n));
        }
    }
    return out;
}

int cmd_benchmark(Run& run, const Globals& g, const SimArgs& sa, std::size_t replicates,
                  const std::vector<std::string>& methods, const FitArgs& fa) {
    run.prepare_out();
    BenchmarkOptions opts;
    opts.sim = sa.config(g, &run);
    opts.replicates = replicates;
    opts.methods = parse_methods(methods);
    opts.threads = g.threads;
    opts.fit = fa.options(1);
    opts.preprocess = g.pre;
    run.params()["config"] = to_json(opts.sim);
    run.params()["replicates"] = replicates;
    run.params()["methods"] = methods;
    run.params()["fit"] = fa.to_json();
    run.params()["preprocess"] = preprocess_json(g.pre);

    const BenchmarkResult r = run_benchmark(opts);
    run.write("benchmark.tsv", benchmark_tsv(r));
    run.write("replicates.tsv", replicate_tsv(r));
    run.write("benchmark.json", benchmark_json(r).dump(2) + '\n');
    run.params()["failed_replicates"] = r.failures;
    if (r.failures == r.replicates.size()) return run.finish(numerical_failure);
    return run.finish(r.failures > 0 ? partial_failure : ok);
}

int cmd_timing(Run& run, const Globals& g, const SimArgs& sa, const std::vector<std::size_t>& patients,
               std::size_t repeats, const FitArgs& fa) {
    run.prepare_out();
    const SimConfig base = sa.config(g, &run);
    run.params()["config"] = to_json(base);
    run.params()["patients"] = patients;
    run.params()["repeats"] = repeats;
    run.params()["fit"] = fa.to_json();
    const auto rows = timing_probe(patients, base, fa.options(g.threads), repeats);
    std::string text = "patients\tgenes\tcpgs\tseconds\tn_outer_iters\n";
    for (const auto& r : rows) {
        text += fmt::format("{}\t{}\t{}\t{}\t{}\n", r.patients, r.genes, r.cpgs,
                            tsv::format_double(r.seconds), r.n_outer_iters);
    }
    run.write("timing.tsv", text);
    return run.finish(ok);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Joint clustering of paired gene expression and CpG methylation differences"};
    app.set_version_flag("--version", JOINTMIX_VERSION);
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "seed for all randomness");
    app.add_option("--out,--out-dir", g.out, "output directory");
    app.add_flag("--force", g.force, "allow writing into a non-empty output directory");
    app.add_option("--log-level", g.log_level)->check(CLI::IsMember({"error", "warn", "info", "debug"}));
    app.add_option("--kernels", g.kernels, "row kernel backend")
        ->check(CLI::IsMember({"auto", "scalar", "avx2", "neon"}));
    app.add_option("--pseudocount", g.pre.pseudocount, "log-CPM pseudocount");
    app.add_option("--beta-eps", g.pre.beta_eps, "beta clamp before the logit");
    app.add_option("--count-threshold", g.pre.count_threshold,
                   "genes need a total count above this");

    InputArgs in;
    FitArgs fa;
    SimArgs sa;
    std::size_t replicates = 1;
    std::size_t bench_replicates = 20;
    std::string layer;
    std::string truth, predicted;
    std::vector<std::string> methods{"joint", "independent"};
    std::vector<std::size_t> patient_sweep{4, 40};
    std::size_t repeats = 1;

    auto* pre = app.add_subcommand("preprocess", "raw counts and beta values -> model inputs");
    pre->add_option("--expression-a", in.expression_a)->required();
    pre->add_option("--expression-b", in.expression_b)->required();
    pre->add_option("--methylation-a", in.methylation_a)->required();
    pre->add_option("--methylation-b", in.methylation_b)->required();

    auto* sim = app.add_subcommand("simulate", "synthetic data with known labels");
    sa.add_to(sim);
    sim->add_option("--replicates", replicates, "number of replicates")->check(CLI::PositiveNumber);

    auto* fit_cmd = app.add_subcommand("fit", "joint gene/CpG mixture, per chromosome");
    in.add_to(fit_cmd);
    fa.add_to(fit_cmd, true);

    auto* base = app.add_subcommand("baseline", "independent mixture on one layer");
    in.add_to(base);
    fa.add_to(base, false);
    base->add_option("--layer", layer)
        ->required()
        ->check(CLI::IsMember({"expression", "methylation"}));

    auto* eval = app.add_subcommand("evaluate", "score predicted labels against truth");
    eval->add_option("--truth", truth)->required();
    eval->add_option("--predicted", predicted)->required();
    eval->add_option("--layer", layer)->required()->check(CLI::IsMember({"gene", "cpg"}));

    auto* bench = app.add_subcommand("benchmark", "simulate, fit and score many replicates");
    sa.add_to(bench);
    bench->add_option("--replicates", bench_replicates, "replicates (at least 2)")->check(CLI::Range(2, 100000));
    bench->add_option("--methods", methods)->delimiter(',');
    fa.add_to(bench, true);

    auto* timing = app.add_subcommand("timing", "fit wall-clock over a sweep of patient counts");
    sa.add_to(timing);
    timing->add_option("--patients-sweep", patient_sweep)->delimiter(',');
    timing->add_option("--repeats", repeats)->check(CLI::PositiveNumber);
    fa.add_to(timing, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return input_failure;
    }

    log::set_level(*log::parse_level(g.log_level));
    if (g.kernels != "auto" && !kernels::select(*kernels::parse_backend(g.kernels))) {
        std::cerr << "kernel backend '" << g.kernels << "' is not available\n";
        return input_failure;
    }
    if (g.out.empty()) {
        std::cerr << "--out is required\n";
        return input_failure;
    }

    Run run(app.get_subcommands().front()->get_name(), g);
    try {
        if (*pre) return cmd_preprocess(run, g, in);
        if (*sim) return cmd_simulate(run, g, sa, replicates);
        if (*fit_cmd) return cmd_fit(run, g, in, fa);
        if (*base) return cmd_baseline(run, g, in, fa, layer);
        if (*eval) return cmd_evaluate(run, truth, predicted, layer);
        if (*bench) return cmd_benchmark(run, g, sa, bench_replicates, methods, fa);
        if (*timing) return cmd_timing(run, g, sa, patient_sweep, repeats, fa);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return run.fail(input_failure, e.what());
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return run.fail(numerical_failure, e.what());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return run.fail(input_failure, e.what());
    }
    return input_failure;
}
