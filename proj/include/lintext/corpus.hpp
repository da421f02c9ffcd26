#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lintext {

struct Document {
    std::string id;    // unique within a corpus; file path or padded record index
    std::string text;  // may be empty, never absent
    std::optional<std::string> label;
};

// Documents sorted by id; classes = sorted distinct labels present.
struct LabeledCorpus {
    std::vector<Document> documents;
    std::vector<std::string> classes;

    // Sorts by id, derives classes, checks id uniqueness.
    static LabeledCorpus from_documents(std::vector<Document> docs);

    size_t size() const { return documents.size(); }
};

struct SplitSpec {
    double train_fraction = 0.8;  // in (0,1)
    uint64_t seed = 42;
    bool stratified = true;
};

// Directory-per-class layout: root/<class>/<file>. A root whose immediate
// subdirectories contain only further directories (e.g. the two bydate
// halves of a newsgroup distribution) is descended one level and same-named
// class directories are merged. Labels come from the immediate parent
// directory; ids are paths relative to root; bytes are decoded as UTF-8
// with invalid sequences replaced by U+FFFD. Empty class directories are
// dropped with a warning.
LabeledCorpus load_dir_per_class(const std::filesystem::path& root);

enum class RecordFormat { kJsonl, kCsv };

// JSONL (one object per line) or CSV (header row, comma-separated,
// double-quote escaping). Ids are zero-based record indices, zero-padded to
// 8 digits so id order equals record order. With require_label=false,
// records may omit label_field (prediction-only corpora).
LabeledCorpus load_records(const std::filesystem::path& path, RecordFormat format,
                           const std::string& text_field, const std::string& label_field,
                           bool require_label = true);

// Per class, round(train_fraction * n_c) documents go to train, chosen by a
// Fisher-Yates shuffle of the class's id-sorted documents driven by
// mt19937_64 seeded with seed XOR fnv1a64(class). Non-stratified mode
// shuffles the whole corpus with the bare seed.
std::pair<LabeledCorpus, LabeledCorpus> stratified_split(const LabeledCorpus& corpus,
                                                         const SplitSpec& spec);

// Parses one CSV record (RFC 4180 quoting) starting at *pos; advances *pos
// past the record's line terminator. Exposed for tests.
std::vector<std::string> parse_csv_record(std::string_view data, size_t* pos);

}  // namespace lintext
