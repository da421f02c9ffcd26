// lintext: deterministic linear text classification.
//
// Subcommands: fit, evaluate, predict, benchmark, split.
// Exit codes: 0 success, 1 usage error, 2 data error. Training that stops on
// the epoch limit is a warning, not an error: the run exits 0 and the report
// flags the unconverged classes.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "lintext/common.hpp"
#include "lintext/eval.hpp"
#include "lintext/explain.hpp"
#include "lintext/json_writer.hpp"
#include "lintext/literature.hpp"
#include "lintext/model_io.hpp"
#include "lintext/report_io.hpp"

namespace fs = std::filesystem;
using namespace lintext;

namespace {

struct CommonOptions {
    PreprocessConfig pre;
    FeatureConfig feat;
    TrainConfig train;
    SplitSpec split;
    bool split_requested = false;
    int threads = 0;
};

struct DataOptions {
    std::string path;
    std::string format = "dir";  // dir | jsonl | csv
    std::string text_field = "text";
    std::string label_field = "label";
};

void add_config_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_flag("--lowercase,!--no-lowercase", opt.pre.lowercase, "lowercase text");
    cmd->add_flag("--strip-urls,!--no-strip-urls", opt.pre.strip_urls, "remove URLs");
    cmd->add_flag("--strip-emails,!--no-strip-emails", opt.pre.strip_emails,
                  "remove email addresses");
    cmd->add_flag("--strip-numeric-tokens,!--no-strip-numeric-tokens",
                  opt.pre.strip_numeric_tokens, "drop all-digit tokens");
    cmd->add_flag("--remove-stopwords,!--no-remove-stopwords", opt.pre.remove_stopwords,
                  "drop bundled English stopwords");
    cmd->add_option("--min-token-chars", opt.pre.min_token_chars, "minimum token length")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--strip-newsgroup-headers,!--no-strip-newsgroup-headers",
                  opt.pre.strip_newsgroup_headers, "drop message headers up to the first blank line");

    cmd->add_option("--ngram-min", opt.feat.ngram_min)->check(CLI::PositiveNumber);
    cmd->add_option("--ngram-max", opt.feat.ngram_max)->check(CLI::PositiveNumber);
    cmd->add_option("--min-df", opt.feat.min_df, "minimum document frequency")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-df-ratio", opt.feat.max_df_ratio);
    cmd->add_flag("--sublinear-tf,!--no-sublinear-tf", opt.feat.sublinear_tf,
                  "use 1+ln(tf) instead of raw tf");

    cmd->add_option("--c", opt.train.C, "SVM penalty parameter");
    cmd->add_option("--loss", [&opt](const std::vector<std::string>& v) {
            if (v.back() != "hinge" && v.back() != "squared_hinge") return false;
            opt.train.loss = loss_from_name(v.back());
            return true;
        }, "hinge or squared_hinge")->expected(1);
    cmd->add_option("--tolerance", opt.train.tolerance, "solver stopping tolerance");
    cmd->add_option("--max-epochs", opt.train.max_epochs)->check(CLI::PositiveNumber);
    cmd->add_option("--bias-scale", opt.train.bias_scale);

    cmd->add_option("--seed", [&opt](const std::vector<std::string>& v) {
            char* end = nullptr;
            unsigned long long s = std::strtoull(v.back().c_str(), &end, 10);
            if (end == v.back().c_str() || *end != '\0') return false;
            opt.split.seed = s;
            opt.train.seed = s;
            return true;
        }, "seed for both the split and the solver")->expected(1);
    cmd->add_option("--train-fraction", [&opt](const std::vector<std::string>& v) {
            char* end = nullptr;
            double f = std::strtod(v.back().c_str(), &end);
            if (end == v.back().c_str() || *end != '\0') return false;
            opt.split.train_fraction = f;
            opt.split_requested = true;
            return true;
        }, "hold out 1-fraction of each class before training")->expected(1);
    cmd->add_flag("--stratified,!--no-stratified", opt.split.stratified,
                  "stratify the split by class");
    cmd->add_option("--threads", opt.threads, "worker threads (0 = library default)");
}

void add_data_flags(CLI::App* cmd, DataOptions& data, bool required = true) {
    auto* p = cmd->add_option("--data", data.path, "dataset path (directory or record file)");
    if (required) p->required();
    cmd->add_option("--format", data.format, "dir, jsonl or csv")
        ->check(CLI::IsMember({"dir", "jsonl", "csv"}));
    cmd->add_option("--text-field", data.text_field, "record field holding the text");
    cmd->add_option("--label-field", data.label_field, "record field holding the label");
}

void apply_threads(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

LabeledCorpus load_corpus(const DataOptions& data, bool require_label = true) {
    if (data.format == "dir") return load_dir_per_class(data.path);
    RecordFormat fmt = data.format == "jsonl" ? RecordFormat::kJsonl : RecordFormat::kCsv;
    return load_records(data.path, fmt, data.text_field, data.label_field, require_label);
}

std::string dataset_display_name(const std::string& requested, const std::string& path) {
    if (!requested.empty()) return requested;
    fs::path p = fs::path(path);
    std::string base = p.filename().string();
    if (base.empty()) base = p.parent_path().filename().string();
    return base.empty() ? "dataset" : base;
}

std::vector<TokenSequence> tokenize_corpus(const LabeledCorpus& corpus,
                                           const PreprocessConfig& pre) {
    std::vector<TokenSequence> out(corpus.size());
    const auto n = static_cast<int64_t>(corpus.size());
    #pragma omp parallel for schedule(dynamic, 16)
    for (int64_t d = 0; d < n; ++d) {
        out[d] = clean_and_tokenize(corpus.documents[d].text, pre);
    }
    return out;
}

struct FitResult {
    ModelBundle bundle;
    LabeledCorpus heldout;
};

// load -> split -> preprocess -> fit tfidf -> train one-vs-rest
FitResult run_fit_pipeline(const DataOptions& data, const CommonOptions& opt,
                           const std::string& name) {
    FitResult result;
    std::string stage = "load";
    try {
        LabeledCorpus corpus = load_corpus(data);
        LabeledCorpus train_part = std::move(corpus);
        double recorded_fraction = 1.0;
        if (opt.split_requested) {
            stage = "split";
            auto [train, test] = stratified_split(train_part, opt.split);
            train_part = std::move(train);
            result.heldout = std::move(test);
            recorded_fraction = opt.split.train_fraction;
        }
        stage = "preprocess";
        auto tokens = tokenize_corpus(train_part, opt.pre);
        stage = "fit-tfidf";
        result.bundle.tfidf = fit_tfidf(tokens, opt.feat, opt.pre);
        stage = "transform";
        auto X = transform_corpus(result.bundle.tfidf, tokens);
        stage = "train";
        std::vector<std::string> labels;
        labels.reserve(train_part.size());
        for (const auto& d : train_part.documents) {
            if (!d.label) throw DataError("unlabeled document: " + d.id);
            labels.push_back(*d.label);
        }
        result.bundle.model =
            train_one_vs_rest(X, labels, result.bundle.tfidf.vocabulary.size(), opt.train);
        result.bundle.metadata.dataset_name = name;
        result.bundle.metadata.config_digest =
            config_digest_hex(opt.pre, opt.feat, opt.train, opt.split);
        result.bundle.metadata.split_seed = opt.split.seed;
        result.bundle.metadata.train_fraction = recorded_fraction;
        result.bundle.metadata.split_stratified = opt.split.stratified;
        result.bundle.metadata.created_unix = reproducible_timestamp();
        return result;
    } catch (const DataError& e) {
        throw DataError("[" + stage + "] " + e.what());
    }
}

void print_fit_summary(const ModelBundle& b) {
    size_t converged = 0;
    int max_epochs_run = 0;
    for (const auto& bin : b.model.binaries) {
        converged += bin.converged ? 1 : 0;
        max_epochs_run = std::max(max_epochs_run, bin.epochs_run);
    }
    std::cout << "fit: V=" << b.tfidf.vocabulary.size() << " classes="
              << b.model.classes.size() << " epochs<=" << max_epochs_run << " converged="
              << converged << "/" << b.model.classes.size() << " train_seconds="
              << b.model.train_seconds << "\n";
    if (converged < b.model.classes.size()) {
        std::cerr << "warning: " << (b.model.classes.size() - converged)
                  << " class(es) stopped on the epoch limit; results are flagged\n";
    }
}

int cmd_fit(const DataOptions& data, const CommonOptions& opt, const std::string& out_path,
            const std::string& name) {
    apply_threads(opt.threads);
    FitResult fr = run_fit_pipeline(data, opt, dataset_display_name(name, data.path));
    save_model(fr.bundle, out_path);
    print_fit_summary(fr.bundle);
    std::cout << "model written to " << out_path << "\n";
    return 0;
}

int cmd_evaluate(const std::string& model_path, const DataOptions& data, bool heldout,
                 const std::string& report_prefix, int threads) {
    apply_threads(threads);
    ModelBundle b = load_model(model_path);
    LabeledCorpus target = load_corpus(data);
    if (heldout) {
        SplitSpec spec;
        spec.seed = b.metadata.split_seed;
        spec.train_fraction = b.metadata.train_fraction;
        spec.stratified = b.metadata.split_stratified;
        if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
            throw DataError("model was trained on the full corpus; no held-out half exists");
        }
        auto [train, test] = stratified_split(target, spec);
        target = std::move(test);
    }
    EvalProvenance prov{b.metadata.dataset_name, b.metadata.split_seed,
                        b.metadata.train_fraction, b.metadata.config_digest};
    EvalReport report =
        evaluate(b.model, b.tfidf, b.tfidf.preprocess_config, target, prov);
    if (!report_prefix.empty()) write_report_files(report, report_prefix);
    std::cout << "evaluate: dataset=" << report.dataset_name_with_class_count
              << " n_test=" << report.n_test << " accuracy=" << report.accuracy
              << " macro_f1=" << report.macro_f1 << "\n";
    if (!report_prefix.empty()) {
        std::cout << "reports written to " << report_prefix << ".{json,md,csv,confusion.csv}\n";
    }
    return 0;
}

void print_explanation_text(const PredictionExplanation& expl) {
    std::string score_str;
    append_double(&score_str, expl.score);
    std::cout << expl.predicted_class << "\t" << score_str << "\n";
    std::string bias_str;
    append_double(&bias_str, expl.bias_contribution);
    std::cout << "  bias: " << bias_str << "\n";
    for (const auto& c : expl.entries(expl.top_k)) {
        std::string product, value, weight;
        append_double(&product, c.product);
        append_double(&value, c.tfidf_value);
        append_double(&weight, c.weight);
        std::cout << "  " << c.term << " (tfidf " << value << ", weight " << weight << ") -> "
                  << product << "\n";
    }
}

void print_prediction_json(const PredictionExplanation& expl, bool with_contributions) {
    std::string line;
    JsonWriter w(&line, /*compact=*/true);
    w.begin_object();
    w.key("bias"); w.value(expl.bias_contribution);
    if (with_contributions) {
        w.key("contributions");
        w.begin_array();
        for (const auto& c : expl.entries(expl.top_k)) {
            w.begin_array();
            w.value(c.term);
            w.value(c.tfidf_value);
            w.value(c.weight);
            w.value(c.product);
            w.end_array();
        }
        w.end_array();
    }
    w.key("predicted"); w.value(expl.predicted_class);
    w.key("score"); w.value(expl.score);
    w.end_object();
    std::cout << line << "\n";
}

int cmd_predict(const std::string& model_path, const std::string& input_path, bool has_text,
                const std::string& inline_text, bool explain, bool explain_all, size_t top_k,
                bool as_json, int threads) {
    apply_threads(threads);
    ModelBundle b = load_model(model_path);
    explain = explain || explain_all;

    std::vector<std::string> documents;
    if (has_text) {
        documents.push_back(inline_text);
    } else {
        std::istream* in = &std::cin;
        std::ifstream file;
        if (!input_path.empty() && input_path != "-") {
            file.open(input_path);
            if (!file) throw DataError("cannot open input: " + input_path);
            in = &file;
        }
        std::string line;
        while (std::getline(*in, line)) documents.push_back(line);
    }

    for (const auto& text : documents) {
        PredictionExplanation expl =
            explain_prediction(b.model, b.tfidf, b.tfidf.preprocess_config, text,
                               explain ? top_k : 0);
        if (as_json) {
            print_prediction_json(expl, explain);
        } else if (explain) {
            print_explanation_text(expl);
        } else {
            std::string score_str;
            append_double(&score_str, expl.score);
            std::cout << expl.predicted_class << "\t" << score_str << "\n";
        }
        if (explain_all) {
            for (const auto& cls : b.model.classes) {
                if (cls == expl.predicted_class) continue;
                PredictionExplanation per_class = explain_class_score(
                    b.model, b.tfidf, b.tfidf.preprocess_config, text, top_k, cls);
                if (as_json) {
                    print_prediction_json(per_class, true);
                } else {
                    print_explanation_text(per_class);
                }
            }
        }
    }
    return 0;
}

int cmd_split(const DataOptions& data, const CommonOptions& opt, const std::string& prefix) {
    LabeledCorpus corpus = load_corpus(data);
    auto [train, test] = stratified_split(corpus, opt.split);
    auto dump = [](const LabeledCorpus& part, const std::string& path) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw DataError("cannot write split file: " + path);
        out << "id,label\n";
        for (const auto& d : part.documents) {
            std::string id = d.id, label = d.label.value_or("");
            auto quote = [](const std::string& s) {
                if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
                std::string q = "\"";
                for (char c : s) {
                    if (c == '"') q += "\"\"";
                    else q.push_back(c);
                }
                q.push_back('"');
                return q;
            };
            out << quote(id) << "," << quote(label) << "\n";
        }
    };
    dump(train, prefix + ".train.csv");
    dump(test, prefix + ".test.csv");
    std::cout << "split: train=" << train.size() << " test=" << test.size() << " seed="
              << opt.split.seed << " fraction=" << opt.split.train_fraction << "\n";
    return 0;
}

struct BenchmarkTarget {
    std::string canonical;  // display name joined against the literature table
    std::string path;
};

std::string canonical_dataset_name(const std::string& key) {
    std::string lower = key;
    for (char& c : lower) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    if (lower == "20newsgroup" || lower == "20news" || lower == "20newsgroups" ||
        lower == "news20") {
        return "20NewsGroup";
    }
    if (lower == "bbc" || lower == "bbcnews" || lower == "bbc-news") return "BBCNews";
    return key;
}

int cmd_benchmark(std::vector<std::string> dataset_args, CommonOptions opt,
                  const std::string& out_dir) {
    apply_threads(opt.threads);
    opt.split_requested = true;  // benchmark always splits

    std::vector<BenchmarkTarget> targets;
    if (dataset_args.empty()) {
        const char* env = std::getenv("LINTEXT_DATA_DIR");
        if (env == nullptr || *env == '\0') {
            throw DataError(
                "no datasets given: pass --dataset name=path or set LINTEXT_DATA_DIR; expected "
                "layout <dir>/20newsgroup/<class>/<file> and <dir>/bbcnews/<class>/<file>");
        }
        for (const char* name : {"20newsgroup", "bbcnews"}) {
            fs::path p = fs::path(env) / name;
            if (fs::exists(p)) targets.push_back({canonical_dataset_name(name), p.string()});
        }
        if (targets.empty()) {
            throw DataError(std::string("no datasets found under ") + env +
                            "; expected layout <dir>/<dataset>/<class>/<one file per document>");
        }
    } else {
        for (const auto& arg : dataset_args) {
            auto eq = arg.find('=');
            if (eq == std::string::npos) {
                targets.push_back({canonical_dataset_name(fs::path(arg).filename().string()), arg});
            } else {
                targets.push_back({canonical_dataset_name(arg.substr(0, eq)), arg.substr(eq + 1)});
            }
        }
    }

    fs::create_directories(out_dir);
    std::string md = "# SVM+TFIDF benchmark\n";
    for (const auto& target : targets) {
        if (!fs::exists(target.path)) {
            throw DataError("dataset not present: " + target.path +
                            " (expected layout <root>/<class>/<one file per document>; this tool "
                            "never downloads data)");
        }
        DataOptions data;
        data.path = target.path;
        std::string ext = fs::path(target.path).extension().string();
        if (ext == ".jsonl") data.format = "jsonl";
        else if (ext == ".csv") data.format = "csv";
        FitResult fr = run_fit_pipeline(data, opt, target.canonical);
        print_fit_summary(fr.bundle);
        EvalProvenance prov{target.canonical, opt.split.seed, opt.split.train_fraction,
                            fr.bundle.metadata.config_digest};
        EvalReport report = evaluate(fr.bundle.model, fr.bundle.tfidf, opt.pre, fr.heldout, prov);

        std::string stem = out_dir + "/" + target.canonical;
        save_model(fr.bundle, stem + ".model.json");
        write_report_files(report, stem + ".report");

        char fresh[32];
        std::snprintf(fresh, sizeof(fresh), "%.1f", report.accuracy * 100.0);
        md += "\n## " + report.dataset_name_with_class_count + "\n\n";
        md += "| model | accuracy | source |\n|---|---|---|\n";
        md += "| SVM+TFIDF (this run) | " + std::string(fresh) + " | reproduced: seed " +
              std::to_string(opt.split.seed) + ", digest " + fr.bundle.metadata.config_digest +
              " |\n";
        for (const auto& row : literature_rows_for(report.dataset_name_with_class_count)) {
            md += "| " + std::string(row.model) + " | " + std::string(row.accuracy_text) +
                  " | reported, not reproduced " + std::string(row.reference) + " |\n";
        }
    }

    std::ofstream out(out_dir + "/benchmark.md", std::ios::binary);
    out << md;
    std::cout << md;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic linear text classification"};
    app.require_subcommand(1);

    // fit
    auto* fit = app.add_subcommand("fit", "train a model and write it to disk");
    DataOptions fit_data;
    CommonOptions fit_opt;
    std::string fit_out = "model.json", fit_name;
    add_data_flags(fit, fit_data);
    add_config_flags(fit, fit_opt);
    fit->add_option("--out", fit_out, "output model path");
    fit->add_option("--name", fit_name, "dataset name recorded in the model");

    // evaluate
    auto* ev = app.add_subcommand("evaluate", "score a model on a labeled dataset");
    DataOptions ev_data;
    std::string ev_model, ev_report;
    bool ev_heldout = false;
    int ev_threads = 0;
    ev->add_option("--model", ev_model, "model file")->required();
    add_data_flags(ev, ev_data);
    ev->add_flag("--heldout", ev_heldout,
                 "evaluate on the held-out half of the model's recorded split");
    ev->add_option("--report", ev_report, "report file prefix");
    ev->add_option("--threads", ev_threads);

    // predict
    auto* pr = app.add_subcommand("predict", "predict labels for new text");
    std::string pr_model, pr_input, pr_text;
    bool pr_explain = false, pr_explain_all = false, pr_json = false;
    size_t pr_k = 10;
    int pr_threads = 0;
    pr->add_option("--model", pr_model)->required();
    pr->add_option("--input", pr_input, "file with one document per line (default stdin)");
    pr->add_option("--text", pr_text, "classify this text instead of reading input");
    pr->add_flag("--explain", pr_explain, "print per-term contributions");
    pr->add_flag("--explain-all", pr_explain_all,
                 "decompose the score of every class, not just the winner");
    pr->add_option("--top-k,-k", pr_k, "contributions to display");
    pr->add_flag("--json", pr_json, "JSON-lines output");
    pr->add_option("--threads", pr_threads);

    // benchmark
    auto* bench = app.add_subcommand("benchmark", "split/fit/evaluate and compare to the "
                                                  "shipped literature table");
    std::vector<std::string> bench_datasets;
    CommonOptions bench_opt;
    std::string bench_out = "benchmark_out";
    bench->add_option("--dataset", bench_datasets, "name=path (repeatable)");
    add_config_flags(bench, bench_opt);
    bench->add_option("--out", bench_out, "output directory");

    // split
    auto* sp = app.add_subcommand("split", "materialize a train/test split for audit");
    DataOptions sp_data;
    CommonOptions sp_opt;
    std::string sp_prefix = "split";
    add_data_flags(sp, sp_data);
    add_config_flags(sp, sp_opt);
    sp->add_option("--out-prefix", sp_prefix, "prefix for .train.csv/.test.csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;  // 0 for --help/--version, 1 for usage errors
    }

    try {
        if (fit->parsed()) return cmd_fit(fit_data, fit_opt, fit_out, fit_name);
        if (ev->parsed()) {
            return cmd_evaluate(ev_model, ev_data, ev_heldout, ev_report, ev_threads);
        }
        if (pr->parsed()) {
            return cmd_predict(pr_model, pr_input, pr->count("--text") > 0, pr_text, pr_explain,
                               pr_explain_all, pr_k, pr_json, pr_threads);
        }
        if (bench->parsed()) return cmd_benchmark(bench_datasets, bench_opt, bench_out);
        if (sp->parsed()) return cmd_split(sp_data, sp_opt, sp_prefix);
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
