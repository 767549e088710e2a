// Copyright 2026-present the prunerank project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// prunerank: static dimension pruning of dense-retrieval indexes.
//
// Workflow: `generate` a synthetic corpus (or bring your own vector files),
// `fit` a PCA model, `prune-transform` the index offline, `search` with
// transformed queries, then `eval`/`compare`/`sweep` the resulting runs.
// All diagnostics go to stderr; tables go to stdout; exit code is 0 iff
// the command succeeded.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "prunerank/bench.hpp"
#include "prunerank/error.hpp"
#include "prunerank/eval.hpp"
#include "prunerank/index.hpp"
#include "prunerank/io.hpp"
#include "prunerank/pca.hpp"
#include "prunerank/synthetic.hpp"
#include "prunerank/wilcoxon.hpp"

namespace {

using namespace prunerank;

// 0 means "use all hardware threads".
std::size_t resolve_threads(std::size_t requested) {
    if (requested > 0) {
        return requested;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

std::string format_metric(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

EvalConfig make_eval_config(std::size_t k, const std::string& gain, int rel_threshold,
                            std::size_t depth) {
    EvalConfig config;
    config.k = k;
    config.gain = gain == "linear" ? GainFunction::kLinear : GainFunction::kExponential;
    config.rel_threshold = rel_threshold;
    config.ap_depth = depth;
    return config;
}

// Applies the model at `cutoff` to docs and queries. A pre-pruned index
// (columns == m) passes through untouched; only the queries are projected.
struct TransformedPair {
    DenseMatrix docs;
    DenseMatrix queries;
    std::size_t dim_out = 0;
};

TransformedPair apply_model(const DenseMatrix& docs, const DenseMatrix& queries,
                            const PcaModel& model, double cutoff, std::size_t threads) {
    const PrunedTransform t = prune_model(model, cutoff);
    TransformedPair out;
    out.dim_out = t.dim_out;
    if (docs.cols() == model.dim) {
        out.docs = transform_corpus(docs, t, threads);
    } else if (docs.cols() == t.dim_out) {
        out.docs = docs;  // already pruned offline
    } else {
        throw Error("index dimension " + std::to_string(docs.cols()) +
                    " matches neither the model dimension " + std::to_string(model.dim) +
                    " nor the pruned dimension " + std::to_string(t.dim_out));
    }
    out.queries = transform_corpus(queries, t, threads);
    return out;
}

struct GenerateArgs {
    std::string out_dir;
    SynthSpec spec;
    std::int64_t basis_seed = -1;  // <0: follow spec.seed
};

int cmd_generate(const GenerateArgs& args) {
    SynthSpec spec = args.spec;
    if (args.basis_seed >= 0) {
        spec.basis_seed = static_cast<std::uint64_t>(args.basis_seed);
    }
    const SynthCorpus corpus = generate(spec);
    const std::filesystem::path dir(args.out_dir);
    std::filesystem::create_directories(dir);
    write_vectors(dir / "docs.vec", corpus.docs);
    write_ids(dir / "docs.ids", corpus.doc_ids);
    write_vectors(dir / "queries.vec", corpus.queries);
    write_ids(dir / "queries.ids", corpus.query_ids);
    write_qrels(dir / "qrels.txt", corpus.qrels);
    std::cerr << "generated " << spec.n_docs << " docs, " << spec.n_queries
              << " queries, dim " << spec.dim << ", rank " << spec.intrinsic_rank
              << " into " << dir.string() << "\n";
    return 0;
}

struct FitArgs {
    std::string docs_path;
    std::string out_path;
    std::string tag;
    std::size_t sample_size = 0;  // 0: use every row
    std::uint64_t seed = 0;
    bool center = false;
};

int cmd_fit(const FitArgs& args) {
    const DenseMatrix docs = read_vectors(args.docs_path);
    if (docs.rows() == 0) {
        throw Error("no vectors in " + args.docs_path);
    }
    DenseMatrix sample;
    if (args.sample_size == 0 || args.sample_size >= docs.rows()) {
        if (args.sample_size > docs.rows()) {
            std::cerr << "warning: sample size " << args.sample_size << " clamped to "
                      << docs.rows() << " available rows\n";
        }
        sample = docs;
    } else {
        sample = sample_rows(docs, args.sample_size, args.seed);
    }
    const std::string tag =
        args.tag.empty() ? std::filesystem::path(args.docs_path).filename().string()
                         : args.tag;
    const PcaModel model = fit_pca(sample, tag, args.center);
    save_pca(args.out_path, model);

    // Retained-variance curve at decile cutoffs, most aggressive first.
    std::cout << "m\tcutoff\tretained_variance\n";
    for (int tenth = 9; tenth >= 0; --tenth) {
        const double cutoff = static_cast<double>(tenth) / 10.0;
        const std::size_t m = cutoff_to_m(cutoff, model.dim);
        const PrunedTransform t = prune_model(model, cutoff);
        std::cout << m << '\t' << format_metric(cutoff) << '\t'
                  << format_metric(t.retained_variance) << '\n';
    }
    std::cerr << "fitted on " << model.fitted_on << " rows of dim " << model.dim
              << ", model written to " << args.out_path << "\n";
    return 0;
}

struct PruneTransformArgs {
    std::string docs_path;
    std::string model_path;
    std::string out_path;
    double cutoff = 0.0;
    std::size_t threads = 1;
};

int cmd_prune_transform(const PruneTransformArgs& args) {
    const DenseMatrix docs = read_vectors(args.docs_path);
    const PcaModel model = load_pca(args.model_path);
    const PrunedTransform t = prune_model(model, args.cutoff);
    const DenseMatrix pruned = transform_corpus(docs, t, resolve_threads(args.threads));
    write_vectors(args.out_path, pruned);
    std::cerr << "pruned " << t.dim_in << " -> " << t.dim_out << " dims (cutoff "
              << args.cutoff << ", retained variance " << format_metric(t.retained_variance)
              << "), wrote " << pruned.rows() << " vectors to " << args.out_path << "\n";
    return 0;
}

struct SearchArgs {
    std::string index_path;
    std::string ids_path;
    std::string queries_path;
    std::string query_ids_path;
    std::string model_path;  // optional
    std::string out_path;
    std::string tag = "prunerank";
    double cutoff = 0.0;
    std::size_t k = 1000;
    std::size_t threads = 1;
};

int cmd_search(const SearchArgs& args) {
    DenseMatrix docs = read_vectors(args.index_path);
    const std::vector<std::string> doc_ids = read_ids(args.ids_path);
    DenseMatrix queries = read_vectors(args.queries_path);
    const std::vector<std::string> query_ids = read_ids(args.query_ids_path);
    const std::size_t threads = resolve_threads(args.threads);

    if (!args.model_path.empty()) {
        const PcaModel model = load_pca(args.model_path);
        TransformedPair pair = apply_model(docs, queries, model, args.cutoff, threads);
        docs = std::move(pair.docs);
        queries = std::move(pair.queries);
    } else if (args.cutoff != 0.0) {
        throw Error("--cutoff requires --model");
    }

    const std::vector<Ranking> run =
        search_batch(docs, doc_ids, query_ids, queries, args.k, threads);
    write_run(args.out_path, run, args.tag);
    std::cerr << "searched " << queries.rows() << " queries over " << docs.rows()
              << " docs at dim " << docs.cols() << ", run written to " << args.out_path
              << "\n";
    return 0;
}

struct EvalArgs {
    std::string run_path;
    std::string qrels_path;
    std::string report_path;  // optional JSON mirror of the table
    std::size_t k = 10;
    std::string gain = "exp";
    int rel_threshold = 1;
    std::size_t depth = 1000;
};

int cmd_eval(const EvalArgs& args) {
    const std::vector<Ranking> run = read_run(args.run_path, &std::cerr);
    const Qrels qrels = read_qrels(args.qrels_path);
    const EvalConfig config =
        make_eval_config(args.k, args.gain, args.rel_threshold, args.depth);
    const std::vector<MetricReport> reports = evaluate_run(run, qrels, config, &std::cerr);
    std::cout << "metric\tquery_id\tvalue\n";
    for (const auto& report : reports) {
        for (const auto& [query_id, value] : report.per_query) {
            std::cout << report.metric << '\t' << query_id << '\t' << format_metric(value)
                      << '\n';
        }
        std::cout << report.metric << "\tall\t" << format_metric(report.mean) << '\n';
    }
    if (!args.report_path.empty()) {
        nlohmann::json doc;
        doc["run"] = args.run_path;
        doc["qrels"] = args.qrels_path;
        doc["config"] = {{"k", args.k},
                         {"gain", args.gain},
                         {"rel_threshold", args.rel_threshold},
                         {"depth", args.depth}};
        doc["metrics"] = nlohmann::json::array();
        for (const auto& report : reports) {
            doc["metrics"].push_back({{"name", report.metric},
                                      {"mean", report.mean},
                                      {"per_query", report.per_query}});
        }
        std::ofstream out(args.report_path, std::ios::trunc);
        out << doc.dump(2) << "\n";
        if (!out.flush()) {
            throw Error("cannot write report to " + args.report_path);
        }
    }
    return 0;
}

struct CompareArgs {
    std::string run_a_path;
    std::string run_b_path;
    std::string qrels_path;
    std::string metric = "ndcg";
    double alpha = 0.05;
    std::size_t k = 10;
    std::string gain = "exp";
    int rel_threshold = 1;
    std::size_t depth = 1000;
};

// Paired per-query values for the chosen metric, restricted to queries
// retrieved (and judged) in both runs.
int cmd_compare(const CompareArgs& args) {
    const std::vector<Ranking> run_a = read_run(args.run_a_path, &std::cerr);
    const std::vector<Ranking> run_b = read_run(args.run_b_path, &std::cerr);
    const Qrels qrels = read_qrels(args.qrels_path);
    const EvalConfig config =
        make_eval_config(args.k, args.gain, args.rel_threshold, args.depth);

    const std::size_t metric_idx = args.metric == "ap" ? 0 : args.metric == "ndcg" ? 1 : 2;
    const MetricReport report_a = evaluate_run(run_a, qrels, config, &std::cerr)[metric_idx];
    const MetricReport report_b = evaluate_run(run_b, qrels, config, &std::cerr)[metric_idx];

    std::unordered_set<std::string> in_b;
    for (const auto& ranking : run_b) in_b.insert(ranking.query_id);
    std::vector<double> x;
    std::vector<double> y;
    for (const auto& ranking : run_a) {
        if (!qrels.has_query(ranking.query_id) || !in_b.contains(ranking.query_id)) continue;
        x.push_back(report_a.per_query.at(ranking.query_id));
        y.push_back(report_b.per_query.at(ranking.query_id));
    }
    if (x.empty()) {
        throw Error("runs share no judged queries; nothing to compare");
    }
    const WilcoxonResult w = wilcoxon_signed_rank(x, y);
    const bool significant = w.p_two_tailed < args.alpha;

    std::cout << "metric\tqueries\tmean_a\tmean_b\tn_effective\tstatistic\tp_value\t"
                 "significant\n";
    std::cout << report_a.metric << '\t' << x.size() << '\t' << format_metric(report_a.mean)
              << '\t' << format_metric(report_b.mean) << '\t' << w.n_effective << '\t'
              << format_metric(w.statistic) << '\t' << format_metric(w.p_two_tailed) << '\t'
              << (significant ? 1 : 0) << '\n';
    return 0;
}

struct SweepArgs {
    std::string docs_path;
    std::string ids_path;
    std::string queries_path;
    std::string query_ids_path;
    std::string qrels_path;
    std::vector<double> cutoffs;
    std::vector<std::size_t> sample_sizes;
    std::uint64_t seed = 0;
    double alpha = 0.05;
    std::size_t k = 10;
    std::string gain = "exp";
    int rel_threshold = 1;
    std::size_t depth = 1000;
    std::size_t threads = 1;
};

// Full RQ grid: every (sample size, cutoff) cell searched and evaluated,
// each metric tested against the unpruned baseline. Cutoff-0 cells ARE the
// baseline (change of basis only), so their significance columns show "-".
int cmd_sweep(const SweepArgs& args) {
    const DenseMatrix docs = read_vectors(args.docs_path);
    const std::vector<std::string> doc_ids = read_ids(args.ids_path);
    const DenseMatrix queries = read_vectors(args.queries_path);
    const std::vector<std::string> query_ids = read_ids(args.query_ids_path);
    const Qrels qrels = read_qrels(args.qrels_path);
    const EvalConfig config =
        make_eval_config(args.k, args.gain, args.rel_threshold, args.depth);
    const std::size_t threads = resolve_threads(args.threads);
    const std::size_t run_depth = std::max(args.k, args.depth);

    const std::vector<Ranking> baseline_run =
        search_batch(docs, doc_ids, query_ids, queries, run_depth, threads);
    const std::vector<MetricReport> baseline =
        evaluate_run(baseline_run, qrels, config, &std::cerr);

    std::cout << "sample_size\tcutoff\tm\tap\tap_sig\tndcg\tndcg_sig\tmrr\tmrr_sig\n";
    for (const std::size_t requested : args.sample_sizes) {
        std::size_t sample_size = requested;
        if (sample_size == 0) {
            sample_size = docs.rows();
        } else if (sample_size > docs.rows()) {
            std::cerr << "warning: sample size " << requested << " clamped to "
                      << docs.rows() << " available rows\n";
            sample_size = docs.rows();
        }
        const DenseMatrix sample = sample_size == docs.rows()
                                       ? docs
                                       : sample_rows(docs, sample_size, args.seed);
        const PcaModel model = fit_pca(sample, "sweep");
        for (const double cutoff : args.cutoffs) {
            const PrunedTransform t = prune_model(model, cutoff);
            const DenseMatrix docs_t = transform_corpus(docs, t, threads);
            const DenseMatrix queries_t = transform_corpus(queries, t, threads);
            const std::vector<Ranking> run =
                search_batch(docs_t, doc_ids, query_ids, queries_t, run_depth, threads);
            const std::vector<MetricReport> reports =
                evaluate_run(run, qrels, config, &std::cerr);

            std::cout << requested << '\t' << format_metric(cutoff) << '\t' << t.dim_out;
            for (std::size_t mi = 0; mi < reports.size(); ++mi) {
                std::cout << '\t' << format_metric(reports[mi].mean) << '\t';
                if (cutoff == 0.0) {
                    std::cout << '-';
                    continue;
                }
                std::vector<double> x;
                std::vector<double> y;
                for (const auto& [query_id, value] : baseline[mi].per_query) {
                    x.push_back(value);
                    y.push_back(reports[mi].per_query.at(query_id));
                }
                const WilcoxonResult w = wilcoxon_signed_rank(x, y);
                std::cout << (w.p_two_tailed < args.alpha ? 1 : 0);
            }
            std::cout << '\n';
        }
    }
    return 0;
}

struct BenchArgs {
    std::string index_path;
    std::string queries_path;
    std::string model_path;  // optional
    double cutoff = 0.0;
    std::size_t repetitions = 5;
    std::size_t k = 10;
};

int cmd_bench(const BenchArgs& args) {
    const DenseMatrix docs = read_vectors(args.index_path);
    const DenseMatrix queries = read_vectors(args.queries_path);
    std::vector<std::string> doc_ids(docs.rows());
    for (std::size_t i = 0; i < doc_ids.size(); ++i) {
        doc_ids[i] = "D" + std::to_string(i);
    }

    ThroughputReport report;
    if (!args.model_path.empty()) {
        const PcaModel model = load_pca(args.model_path);
        const PrunedTransform t = prune_model(model, args.cutoff);
        const DenseMatrix pruned = transform_corpus(docs, t);
        const EmbeddingIndex index =
            EmbeddingIndex::from_matrix(pruned, std::move(doc_ids), "bench");
        report = bench_throughput(index, queries, args.repetitions, args.k, &t);
    } else {
        const EmbeddingIndex index =
            EmbeddingIndex::from_matrix(docs, std::move(doc_ids), "bench");
        report = bench_throughput(index, queries, args.repetitions, args.k);
    }

    std::cout << "dim\tn_docs\tn_queries\tk\trepetitions\tmedian_seconds\t"
                 "queries_per_second\tmean_latency_ms\n";
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%zu\t%zu\t%zu\t%zu\t%zu\t%.6f\t%.2f\t%.4f\n",
                  report.dim, report.n_docs, report.n_queries, report.k, report.repetitions,
                  report.median_seconds, report.queries_per_second,
                  report.mean_latency_seconds * 1e3);
    std::cout << buf;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Static dimension pruning of dense-retrieval embedding indexes"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate_cmd = app.add_subcommand(
        "generate", "Generate a synthetic corpus (docs, queries, qrels) with planted relevance");
    generate_cmd->add_option("--out-dir", gen.out_dir, "Output directory")->required();
    generate_cmd->add_option("--docs", gen.spec.n_docs, "Number of documents");
    generate_cmd->add_option("--queries", gen.spec.n_queries, "Number of queries");
    generate_cmd->add_option("--dim", gen.spec.dim, "Embedding dimension");
    generate_cmd->add_option("--rank", gen.spec.intrinsic_rank, "Intrinsic rank (<= dim)");
    generate_cmd->add_option("--decay", gen.spec.signal_decay,
                             "Latent scale decay per component, in (0, 1]");
    generate_cmd->add_option("--sigma", gen.spec.noise_sigma, "Additive noise sigma");
    generate_cmd->add_option("--seed", gen.spec.seed, "Corpus seed");
    generate_cmd->add_option("--basis-seed", gen.basis_seed,
                             "Latent basis seed (defaults to --seed; fix it while varying "
                             "--seed for same-model corpora)");
    generate_cmd->add_option("--k-relevant", gen.spec.k_relevant,
                             "Judged-relevant docs per query");

    FitArgs fit;
    auto* fit_cmd = app.add_subcommand("fit", "Fit a PCA model on (a sample of) a corpus");
    fit_cmd->add_option("--docs", fit.docs_path, "Document vectors")
        ->required()->check(CLI::ExistingFile);
    fit_cmd->add_option("--out", fit.out_path, "Output model file")->required();
    fit_cmd->add_option("--sample-size", fit.sample_size, "Rows to sample (0: all rows)");
    fit_cmd->add_option("--seed", fit.seed, "Sampling seed");
    fit_cmd->add_option("--tag", fit.tag, "Source tag stored in the model");
    fit_cmd->add_flag("--center", fit.center,
                      "Subtract column means before the Gram computation (loses exact "
                      "score preservation at full dimension)");

    PruneTransformArgs prune;
    auto* prune_cmd = app.add_subcommand(
        "prune-transform", "Apply a pruned PCA transform to a corpus offline");
    prune_cmd->add_option("--docs", prune.docs_path, "Input vectors")
        ->required()->check(CLI::ExistingFile);
    prune_cmd->add_option("--model", prune.model_path, "PCA model file")
        ->required()->check(CLI::ExistingFile);
    prune_cmd->add_option("--cutoff", prune.cutoff, "Fraction of dimensions to remove, in [0, 1)");
    prune_cmd->add_option("--out", prune.out_path, "Output vectors")->required();
    prune_cmd->add_option("--threads", prune.threads, "Worker threads (0: all cores)")
        ->envname("PRUNERANK_THREADS");

    SearchArgs search;
    auto* search_cmd = app.add_subcommand("search", "Exact top-k search, writing a TREC run");
    search_cmd->add_option("--index", search.index_path, "Document vectors")
        ->required()->check(CLI::ExistingFile);
    search_cmd->add_option("--ids", search.ids_path, "Document id sidecar")
        ->required()->check(CLI::ExistingFile);
    search_cmd->add_option("--queries", search.queries_path, "Query vectors")
        ->required()->check(CLI::ExistingFile);
    search_cmd->add_option("--query-ids", search.query_ids_path, "Query id sidecar")
        ->required()->check(CLI::ExistingFile);
    search_cmd->add_option("--model", search.model_path,
                           "PCA model; index and queries are transformed at --cutoff "
                           "(a pre-pruned index is detected by its dimension)")
        ->check(CLI::ExistingFile);
    search_cmd->add_option("--cutoff", search.cutoff, "Fraction of dimensions to remove");
    search_cmd->add_option("--k", search.k, "Hits per query");
    search_cmd->add_option("--out", search.out_path, "Output run file")->required();
    search_cmd->add_option("--tag", search.tag, "Run tag (sixth TREC column)");
    search_cmd->add_option("--threads", search.threads, "Worker threads (0: all cores)")
        ->envname("PRUNERANK_THREADS");

    EvalArgs eval;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a run against qrels (AP, nDCG@k, MRR@k)");
    eval_cmd->add_option("--run", eval.run_path, "Run file")
        ->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("--qrels", eval.qrels_path, "Qrels file")
        ->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("--report", eval.report_path, "Also write a JSON report here");
    eval_cmd->add_option("--k", eval.k, "Cutoff for nDCG@k and MRR@k");
    eval_cmd->add_option("--gain", eval.gain, "nDCG gain function")
        ->check(CLI::IsMember({"exp", "linear"}));
    eval_cmd->add_option("--rel-threshold", eval.rel_threshold,
                         "Minimum grade counted as relevant");
    eval_cmd->add_option("--depth", eval.depth, "Ranks considered by AP");

    CompareArgs compare;
    auto* compare_cmd = app.add_subcommand(
        "compare", "Paired two-tailed Wilcoxon signed-rank test between two runs");
    compare_cmd->add_option("run_a", compare.run_a_path, "Baseline run")
        ->required()->check(CLI::ExistingFile);
    compare_cmd->add_option("run_b", compare.run_b_path, "Contrast run")
        ->required()->check(CLI::ExistingFile);
    compare_cmd->add_option("--qrels", compare.qrels_path, "Qrels file")
        ->required()->check(CLI::ExistingFile);
    compare_cmd->add_option("--metric", compare.metric, "Metric to compare")
        ->check(CLI::IsMember({"ap", "ndcg", "mrr"}));
    compare_cmd->add_option("--alpha", compare.alpha, "Significance level");
    compare_cmd->add_option("--k", compare.k, "Cutoff for nDCG@k and MRR@k");
    compare_cmd->add_option("--gain", compare.gain, "nDCG gain function")
        ->check(CLI::IsMember({"exp", "linear"}));
    compare_cmd->add_option("--rel-threshold", compare.rel_threshold,
                            "Minimum grade counted as relevant");
    compare_cmd->add_option("--depth", compare.depth, "Ranks considered by AP");

    SweepArgs sweep;
    auto* sweep_cmd = app.add_subcommand(
        "sweep", "Grid over sample sizes and cutoffs with significance vs the unpruned baseline");
    sweep_cmd->add_option("--docs", sweep.docs_path, "Document vectors")
        ->required()->check(CLI::ExistingFile);
    sweep_cmd->add_option("--ids", sweep.ids_path, "Document id sidecar")
        ->required()->check(CLI::ExistingFile);
    sweep_cmd->add_option("--queries", sweep.queries_path, "Query vectors")
        ->required()->check(CLI::ExistingFile);
    sweep_cmd->add_option("--query-ids", sweep.query_ids_path, "Query id sidecar")
        ->required()->check(CLI::ExistingFile);
    sweep_cmd->add_option("--qrels", sweep.qrels_path, "Qrels file")
        ->required()->check(CLI::ExistingFile);
    sweep_cmd->add_option("--cutoff", sweep.cutoffs, "Cutoff grid, comma-separated")
        ->required()->delimiter(',');
    sweep_cmd->add_option("--sample-size", sweep.sample_sizes,
                          "Fitting sample sizes, comma-separated (0: all rows)")
        ->required()->delimiter(',');
    sweep_cmd->add_option("--seed", sweep.seed, "Sampling seed");
    sweep_cmd->add_option("--alpha", sweep.alpha, "Significance level");
    sweep_cmd->add_option("--k", sweep.k, "Cutoff for nDCG@k and MRR@k");
    sweep_cmd->add_option("--gain", sweep.gain, "nDCG gain function")
        ->check(CLI::IsMember({"exp", "linear"}));
    sweep_cmd->add_option("--rel-threshold", sweep.rel_threshold,
                          "Minimum grade counted as relevant");
    sweep_cmd->add_option("--depth", sweep.depth, "Ranks considered by AP");
    sweep_cmd->add_option("--threads", sweep.threads, "Worker threads (0: all cores)")
        ->envname("PRUNERANK_THREADS");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand(
        "bench", "Single-threaded search throughput (median of repeated passes)");
    bench_cmd->add_option("--index", bench.index_path, "Document vectors")
        ->required()->check(CLI::ExistingFile);
    bench_cmd->add_option("--queries", bench.queries_path, "Query vectors")
        ->required()->check(CLI::ExistingFile);
    bench_cmd->add_option("--model", bench.model_path,
                          "PCA model; the index is pruned offline at --cutoff and the "
                          "per-query transform cost is included in the timing")
        ->check(CLI::ExistingFile);
    bench_cmd->add_option("--cutoff", bench.cutoff, "Fraction of dimensions to remove");
    bench_cmd->add_option("--reps", bench.repetitions, "Timed repetitions");
    bench_cmd->add_option("--k", bench.k, "Hits per query");

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate_cmd->parsed()) return cmd_generate(gen);
        if (fit_cmd->parsed()) return cmd_fit(fit);
        if (prune_cmd->parsed()) return cmd_prune_transform(prune);
        if (search_cmd->parsed()) return cmd_search(search);
        if (eval_cmd->parsed()) return cmd_eval(eval);
        if (compare_cmd->parsed()) return cmd_compare(compare);
        if (sweep_cmd->parsed()) return cmd_sweep(sweep);
        if (bench_cmd->parsed()) return cmd_bench(bench);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
