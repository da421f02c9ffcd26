#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "lintext/corpus.hpp"
#include "lintext/solver.hpp"

namespace lintext {

constexpr int kModelFormatVersion = 1;

struct ModelMetadata {
    std::string dataset_name;
    std::string config_digest;
    uint64_t split_seed = 0;
    double train_fraction = 1.0;  // 1.0 = trained on the full corpus
    bool split_stratified = true;
    uint64_t created_unix = 0;    // SOURCE_DATE_EPOCH when set, else 0
};

// Everything needed to reproduce a prediction: the fitted tfidf model (which
// carries the preprocess and feature configs), the trained classifier (which
// carries the train config) and provenance.
struct ModelBundle {
    TfidfModel tfidf;
    MulticlassLinearModel model;
    ModelMetadata metadata;
};

// Single self-describing JSON document. Weights are stored sparsely as
// (index, value) pairs with an explicit bias entry; doubles use shortest
// round-trip encoding, so load(save(m)) reproduces every value bit-exactly
// and save(load(save(m))) is byte-identical. The embedded checksum is
// FNV-1a 64 over a canonical binary encoding of the payload.
void save_model(const ModelBundle& bundle, const std::filesystem::path& path);
ModelBundle load_model(const std::filesystem::path& path);

std::string serialize_model(const ModelBundle& bundle);
ModelBundle parse_model(const std::string& json_text);

// Stable digest over all configuration that affects a benchmark run.
std::string config_digest_hex(const PreprocessConfig& pre, const FeatureConfig& feat,
                              const TrainConfig& train, const SplitSpec& split);

// SOURCE_DATE_EPOCH when set and parseable, else 0. Keeps model files
// byte-identical across runs unless the caller opts into real timestamps.
uint64_t reproducible_timestamp();

}  // namespace lintext
