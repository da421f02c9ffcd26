#include "lintext/model_io.hpp"

#include <bit>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lintext/common.hpp"
#include "lintext/json_writer.hpp"

using nlohmann::json;

namespace lintext {

namespace {

// Canonical binary encoding fed to the checksum: field tag, length-prefixed
// strings, raw IEEE-754 bits for doubles. Independent of JSON layout.
class PayloadHasher {
public:
    void add(std::string_view s) {
        add_u64(s.size());
        state_ = fnv1a64(s, state_);
    }
    void add_u64(uint64_t v) {
        char bytes[8];
        for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
        state_ = fnv1a64(std::string_view(bytes, 8), state_);
    }
    void add_double(double v) { add_u64(std::bit_cast<uint64_t>(v)); }
    void add_bool(bool b) { add_u64(b ? 1 : 0); }
    uint64_t digest() const { return state_; }

private:
    uint64_t state_ = kFnv64Offset;
};

uint64_t payload_checksum(const ModelBundle& b) {
    PayloadHasher h;
    h.add_u64(kModelFormatVersion);
    const PreprocessConfig& p = b.tfidf.preprocess_config;
    h.add_bool(p.lowercase);
    h.add_bool(p.strip_urls);
    h.add_bool(p.strip_emails);
    h.add_bool(p.strip_numeric_tokens);
    h.add_bool(p.remove_stopwords);
    h.add_u64(static_cast<uint64_t>(p.min_token_chars));
    h.add_bool(p.strip_newsgroup_headers);
    const FeatureConfig& f = b.tfidf.config;
    h.add_u64(static_cast<uint64_t>(f.ngram_min));
    h.add_u64(static_cast<uint64_t>(f.ngram_max));
    h.add_u64(static_cast<uint64_t>(f.min_df));
    h.add_double(f.max_df_ratio);
    h.add_bool(f.sublinear_tf);
    const TrainConfig& t = b.model.config;
    h.add_double(t.C);
    h.add(loss_name(t.loss));
    h.add_double(t.tolerance);
    h.add_u64(static_cast<uint64_t>(t.max_epochs));
    h.add_u64(t.seed);
    h.add_double(t.bias_scale);
    h.add_u64(b.tfidf.vocabulary.n_documents);
    h.add_u64(b.tfidf.vocabulary.terms.size());
    for (const auto& term : b.tfidf.vocabulary.terms) h.add(term);
    for (uint32_t df : b.tfidf.vocabulary.document_frequency) h.add_u64(df);
    for (double v : b.tfidf.idf) h.add_double(v);
    h.add_u64(b.model.classes.size());
    for (const auto& cls : b.model.classes) h.add(cls);
    h.add_u64(b.model.n_features);
    const bool has_bias = b.model.config.bias_scale > 0.0;
    for (const auto& bin : b.model.binaries) {
        h.add_double(has_bias ? bin.weights[b.model.n_features] : 0.0);
        h.add_bool(bin.converged);
        h.add_u64(static_cast<uint64_t>(bin.epochs_run));
        h.add_double(bin.primal_objective);
        h.add_double(bin.dual_objective);
        for (size_t j = 0; j < b.model.n_features; ++j) {
            if (bin.weights[j] != 0.0) {
                h.add_u64(j);
                h.add_double(bin.weights[j]);
            }
        }
    }
    h.add(b.metadata.dataset_name);
    h.add(b.metadata.config_digest);
    h.add_u64(b.metadata.split_seed);
    h.add_double(b.metadata.train_fraction);
    h.add_bool(b.metadata.split_stratified);
    h.add_u64(b.metadata.created_unix);
    return h.digest();
}

void write_preprocess(JsonWriter& w, const PreprocessConfig& p) {
    w.begin_object();
    w.key("lowercase"); w.value(p.lowercase);
    w.key("min_token_chars"); w.value(static_cast<int64_t>(p.min_token_chars));
    w.key("remove_stopwords"); w.value(p.remove_stopwords);
    w.key("strip_emails"); w.value(p.strip_emails);
    w.key("strip_newsgroup_headers"); w.value(p.strip_newsgroup_headers);
    w.key("strip_numeric_tokens"); w.value(p.strip_numeric_tokens);
    w.key("strip_urls"); w.value(p.strip_urls);
    w.end_object();
}

void write_features(JsonWriter& w, const FeatureConfig& f) {
    w.begin_object();
    w.key("max_df_ratio"); w.value(f.max_df_ratio);
    w.key("min_df"); w.value(static_cast<int64_t>(f.min_df));
    w.key("ngram_max"); w.value(static_cast<int64_t>(f.ngram_max));
    w.key("ngram_min"); w.value(static_cast<int64_t>(f.ngram_min));
    w.key("sublinear_tf"); w.value(f.sublinear_tf);
    w.end_object();
}

void write_train(JsonWriter& w, const TrainConfig& t) {
    w.begin_object();
    w.key("bias_scale"); w.value(t.bias_scale);
    w.key("c"); w.value(t.C);
    w.key("loss"); w.value(loss_name(t.loss));
    w.key("max_epochs"); w.value(static_cast<int64_t>(t.max_epochs));
    w.key("seed"); w.value(t.seed);
    w.key("tolerance"); w.value(t.tolerance);
    w.end_object();
}

PreprocessConfig parse_preprocess(const json& j) {
    PreprocessConfig p;
    p.lowercase = j.at("lowercase").get<bool>();
    p.min_token_chars = j.at("min_token_chars").get<int>();
    p.remove_stopwords = j.at("remove_stopwords").get<bool>();
    p.strip_emails = j.at("strip_emails").get<bool>();
    p.strip_newsgroup_headers = j.at("strip_newsgroup_headers").get<bool>();
    p.strip_numeric_tokens = j.at("strip_numeric_tokens").get<bool>();
    p.strip_urls = j.at("strip_urls").get<bool>();
    return p;
}

FeatureConfig parse_features(const json& j) {
    FeatureConfig f;
    f.max_df_ratio = j.at("max_df_ratio").get<double>();
    f.min_df = j.at("min_df").get<int>();
    f.ngram_max = j.at("ngram_max").get<int>();
    f.ngram_min = j.at("ngram_min").get<int>();
    f.sublinear_tf = j.at("sublinear_tf").get<bool>();
    return f;
}

TrainConfig parse_train(const json& j) {
    TrainConfig t;
    t.bias_scale = j.at("bias_scale").get<double>();
    t.C = j.at("c").get<double>();
    t.loss = loss_from_name(j.at("loss").get<std::string>());
    t.max_epochs = j.at("max_epochs").get<int>();
    t.seed = j.at("seed").get<uint64_t>();
    t.tolerance = j.at("tolerance").get<double>();
    return t;
}

}  // namespace

uint64_t reproducible_timestamp() {
    const char* env = std::getenv("SOURCE_DATE_EPOCH");
    if (env == nullptr || *env == '\0') return 0;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    return (end != nullptr && *end == '\0') ? static_cast<uint64_t>(v) : 0;
}

std::string config_digest_hex(const PreprocessConfig& pre, const FeatureConfig& feat,
                              const TrainConfig& train, const SplitSpec& split) {
    std::string buf;
    JsonWriter w(&buf);
    w.begin_object();
    w.key("features"); write_features(w, feat);
    w.key("preprocess"); write_preprocess(w, pre);
    w.key("split");
    w.begin_object();
    w.key("seed"); w.value(split.seed);
    w.key("stratified"); w.value(split.stratified);
    w.key("train_fraction"); w.value(split.train_fraction);
    w.end_object();
    w.key("train"); write_train(w, train);
    w.end_object();
    return to_hex64(fnv1a64(buf));
}

std::string serialize_model(const ModelBundle& b) {
    std::string out;
    out.reserve(1 << 20);
    JsonWriter w(&out);
    w.begin_object();
    w.key("checksum"); w.value(to_hex64(payload_checksum(b)));
    w.key("class_weights");
    w.begin_array();
    const bool save_bias = b.model.config.bias_scale > 0.0;
    for (size_t c = 0; c < b.model.classes.size(); ++c) {
        const BinaryModel& bin = b.model.binaries[c];
        w.begin_object();
        // raw coordinate of the augmented bias feature; the decision-time
        // bias is this value times bias_scale
        w.key("bias"); w.value(save_bias ? bin.weights[b.model.n_features] : 0.0);
        w.key("class"); w.value(b.model.classes[c]);
        w.key("converged"); w.value(bin.converged);
        w.key("dual_objective"); w.value(bin.dual_objective);
        w.key("epochs_run"); w.value(static_cast<int64_t>(bin.epochs_run));
        w.key("indices");
        w.begin_array();
        for (size_t j = 0; j < b.model.n_features; ++j) {
            if (bin.weights[j] != 0.0) w.value(static_cast<uint64_t>(j));
        }
        w.end_array();
        w.key("primal_objective"); w.value(bin.primal_objective);
        w.key("values");
        w.begin_array();
        for (size_t j = 0; j < b.model.n_features; ++j) {
            if (bin.weights[j] != 0.0) w.value(bin.weights[j]);
        }
        w.end_array();
        w.end_object();
    }
    w.end_array();
    w.key("classes");
    w.begin_array();
    for (const auto& cls : b.model.classes) w.value(cls);
    w.end_array();
    w.key("feature_config"); write_features(w, b.tfidf.config);
    w.key("format_version"); w.value(static_cast<int64_t>(kModelFormatVersion));
    w.key("idf");
    w.begin_array();
    for (double v : b.tfidf.idf) w.value(v);
    w.end_array();
    w.key("metadata");
    w.begin_object();
    w.key("config_digest"); w.value(b.metadata.config_digest);
    w.key("created_unix"); w.value(b.metadata.created_unix);
    w.key("dataset_name"); w.value(b.metadata.dataset_name);
    w.key("seed"); w.value(b.model.config.seed);
    w.key("split_seed"); w.value(b.metadata.split_seed);
    w.key("split_stratified"); w.value(b.metadata.split_stratified);
    w.key("train_fraction"); w.value(b.metadata.train_fraction);
    w.end_object();
    w.key("preprocess_config"); write_preprocess(w, b.tfidf.preprocess_config);
    w.key("train_config"); write_train(w, b.model.config);
    w.key("vocabulary");
    w.begin_object();
    w.key("document_frequency");
    w.begin_array();
    for (uint32_t df : b.tfidf.vocabulary.document_frequency) w.value(static_cast<uint64_t>(df));
    w.end_array();
    w.key("n_documents"); w.value(b.tfidf.vocabulary.n_documents);
    w.key("terms");
    w.begin_array();
    for (const auto& term : b.tfidf.vocabulary.terms) w.value(term);
    w.end_array();
    w.end_object();
    w.end_object();
    out.push_back('\n');
    return out;
}

ModelBundle parse_model(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw DataError("model file is not valid JSON");
    if (!j.contains("format_version")) throw DataError("model file has no format_version");
    int version = j.at("format_version").get<int>();
    if (version != kModelFormatVersion) {
        throw DataError("model format_version " + std::to_string(version) +
                        " unsupported, this build reads version " +
                        std::to_string(kModelFormatVersion));
    }

    ModelBundle b;
    b.tfidf.preprocess_config = parse_preprocess(j.at("preprocess_config"));
    b.tfidf.config = parse_features(j.at("feature_config"));
    b.model.config = parse_train(j.at("train_config"));

    const json& vocab = j.at("vocabulary");
    b.tfidf.vocabulary.n_documents = vocab.at("n_documents").get<uint64_t>();
    b.tfidf.vocabulary.terms = vocab.at("terms").get<std::vector<std::string>>();
    b.tfidf.vocabulary.document_frequency =
        vocab.at("document_frequency").get<std::vector<uint32_t>>();
    b.tfidf.idf = j.at("idf").get<std::vector<double>>();
    const size_t v_size = b.tfidf.vocabulary.terms.size();
    if (b.tfidf.idf.size() != v_size || b.tfidf.vocabulary.document_frequency.size() != v_size) {
        throw DataError("model file: vocabulary arrays disagree in length");
    }

    b.model.classes = j.at("classes").get<std::vector<std::string>>();
    b.model.n_features = v_size;
    const bool has_bias = b.model.config.bias_scale > 0.0;
    const json& cw = j.at("class_weights");
    if (!cw.is_array() || cw.size() != b.model.classes.size()) {
        throw DataError("model file: class_weights does not match classes");
    }
    b.model.binaries.resize(b.model.classes.size());
    for (size_t c = 0; c < cw.size(); ++c) {
        const json& entry = cw[c];
        if (entry.at("class").get<std::string>() != b.model.classes[c]) {
            throw DataError("model file: class_weights order does not match classes");
        }
        BinaryModel& bin = b.model.binaries[c];
        const double bias_coord = entry.at("bias").get<double>();
        bin.converged = entry.at("converged").get<bool>();
        bin.dual_objective = entry.at("dual_objective").get<double>();
        bin.primal_objective = entry.at("primal_objective").get<double>();
        bin.epochs_run = entry.at("epochs_run").get<int>();
        bin.weights.assign(v_size + (has_bias ? 1 : 0), 0.0);
        auto indices = entry.at("indices").get<std::vector<uint64_t>>();
        auto values = entry.at("values").get<std::vector<double>>();
        if (indices.size() != values.size()) {
            throw DataError("model file: weight indices/values disagree in length");
        }
        for (size_t k = 0; k < indices.size(); ++k) {
            if (indices[k] >= v_size) throw DataError("model file: weight index out of range");
            bin.weights[indices[k]] = values[k];
        }
        if (has_bias) {
            bin.weights[v_size] = bias_coord;
            bin.bias = bias_coord * b.model.config.bias_scale;
        }
    }

    const json& meta = j.at("metadata");
    b.metadata.dataset_name = meta.at("dataset_name").get<std::string>();
    b.metadata.config_digest = meta.at("config_digest").get<std::string>();
    b.metadata.split_seed = meta.at("split_seed").get<uint64_t>();
    b.metadata.split_stratified = meta.at("split_stratified").get<bool>();
    b.metadata.train_fraction = meta.at("train_fraction").get<double>();
    b.metadata.created_unix = meta.at("created_unix").get<uint64_t>();

    std::string stored = j.at("checksum").get<std::string>();
    std::string computed = to_hex64(payload_checksum(b));
    if (stored != computed) {
        throw DataError("model file checksum mismatch (stored " + stored + ", computed " +
                        computed + "): file is corrupt");
    }
    return b;
}

void save_model(const ModelBundle& bundle, const std::filesystem::path& path) {
    std::string text = serialize_model(bundle);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write model file: " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw DataError("failed writing model file: " + path.string());
}

ModelBundle load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open model file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

}  // namespace lintext
