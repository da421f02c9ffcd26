#include "lintext/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "lintext/common.hpp"

namespace fs = std::filesystem;

namespace lintext {

namespace {

std::string read_file_bytes(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void check_split_spec(const SplitSpec& spec) {
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
        throw DataError("train_fraction must be in (0,1), got " +
                        std::to_string(spec.train_fraction));
    }
}

}  // namespace

LabeledCorpus LabeledCorpus::from_documents(std::vector<Document> docs) {
    std::sort(docs.begin(), docs.end(),
              [](const Document& a, const Document& b) { return a.id < b.id; });
    for (size_t i = 1; i < docs.size(); ++i) {
        if (docs[i].id == docs[i - 1].id) {
            throw DataError("duplicate document id: " + docs[i].id);
        }
    }
    std::set<std::string> labels;
    for (const auto& d : docs) {
        if (d.label) labels.insert(*d.label);
    }
    LabeledCorpus corpus;
    corpus.documents = std::move(docs);
    corpus.classes.assign(labels.begin(), labels.end());
    return corpus;
}

LabeledCorpus load_dir_per_class(const fs::path& root) {
    if (!fs::exists(root)) throw DataError("dataset path does not exist: " + root.string());
    if (!fs::is_directory(root)) throw DataError("dataset path is not a directory: " + root.string());

    // Collect class directories; descend one level through container
    // directories that hold no regular files themselves (bydate-style halves).
    std::vector<fs::path> class_dirs;
    bool any_file_at_top = false;
    std::vector<fs::path> subdirs;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (entry.is_directory()) subdirs.push_back(entry.path());
    }
    if (subdirs.empty()) throw DataError("no class subdirectories under: " + root.string());
    for (const auto& dir : subdirs) {
        bool has_file = false, has_dir = false;
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (entry.is_regular_file()) has_file = true;
            if (entry.is_directory()) has_dir = true;
        }
        if (has_file) {
            class_dirs.push_back(dir);
            any_file_at_top = true;
        } else if (has_dir) {
            for (const auto& inner : fs::directory_iterator(dir)) {
                if (inner.is_directory()) class_dirs.push_back(inner.path());
            }
        } else {
            class_dirs.push_back(dir);  // empty; warned below
        }
    }
    (void)any_file_at_top;

    std::vector<Document> docs;
    std::set<std::string> seen_empty;
    for (const auto& dir : class_dirs) {
        std::string label = dir.filename().string();
        size_t count = 0;
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (!entry.is_regular_file()) continue;
            Document doc;
            doc.id = fs::relative(entry.path(), root).generic_string();
            doc.text = sanitize_utf8(read_file_bytes(entry.path()));
            doc.label = label;
            docs.push_back(std::move(doc));
            ++count;
        }
        if (count == 0) seen_empty.insert(label);
    }
    for (const auto& label : seen_empty) {
        std::cerr << "warning: class directory '" << label << "' has no files, dropped\n";
    }
    if (docs.empty()) throw DataError("no documents found under: " + root.string());
    return LabeledCorpus::from_documents(std::move(docs));
}

std::vector<std::string> parse_csv_record(std::string_view data, size_t* pos) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    size_t i = *pos;
    while (i < data.size()) {
        char c = data[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < data.size() && data[i + 1] == '"') {
                    field.push_back('"');
                    i += 2;
                } else {
                    quoted = false;
                    ++i;
                }
            } else {
                field.push_back(c);
                ++i;
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
            ++i;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
            ++i;
        } else if (c == '\n' || c == '\r') {
            break;
        } else {
            field.push_back(c);
            ++i;
        }
    }
    if (quoted) throw DataError("unterminated quoted CSV field");
    fields.push_back(std::move(field));
    // consume \n, \r\n or \r
    if (i < data.size() && data[i] == '\r') ++i;
    if (i < data.size() && data[i] == '\n') ++i;
    *pos = i;
    return fields;
}

namespace {

std::string record_id(size_t index) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%08zu", index);
    return std::string(buf);
}

LabeledCorpus load_jsonl(const fs::path& path, const std::string& text_field,
                         const std::string& label_field, bool require_label) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path.string());
    std::vector<Document> docs;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json rec = nlohmann::json::parse(line, nullptr, false);
        if (rec.is_discarded() || !rec.is_object()) {
            throw DataError("malformed JSONL record at line " + std::to_string(line_no) +
                            " of " + path.string());
        }
        if (!rec.contains(text_field) || !rec[text_field].is_string()) {
            throw DataError("record at line " + std::to_string(line_no) + " missing field '" +
                            text_field + "'");
        }
        Document doc;
        doc.id = record_id(docs.size());
        doc.text = sanitize_utf8(rec[text_field].get<std::string>());
        if (rec.contains(label_field) && rec[label_field].is_string()) {
            doc.label = sanitize_utf8(rec[label_field].get<std::string>());
        } else if (require_label) {
            throw DataError("record at line " + std::to_string(line_no) + " missing field '" +
                            label_field + "'");
        }
        docs.push_back(std::move(doc));
    }
    if (docs.empty()) throw DataError("no records in " + path.string());
    return LabeledCorpus::from_documents(std::move(docs));
}

LabeledCorpus load_csv(const fs::path& path, const std::string& text_field,
                       const std::string& label_field, bool require_label) {
    std::string data = read_file_bytes(path);
    size_t pos = 0;
    if (data.empty()) throw DataError("empty CSV file: " + path.string());
    std::vector<std::string> header = parse_csv_record(data, &pos);
    auto column = [&](const std::string& name) -> std::optional<size_t> {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) return std::nullopt;
        return static_cast<size_t>(it - header.begin());
    };
    auto text_col = column(text_field);
    if (!text_col) throw DataError("CSV header missing column '" + text_field + "'");
    auto label_col = column(label_field);
    if (!label_col && require_label) {
        throw DataError("CSV header missing column '" + label_field + "'");
    }

    std::vector<Document> docs;
    size_t line_no = 1;
    while (pos < data.size()) {
        ++line_no;
        std::vector<std::string> fields = parse_csv_record(data, &pos);
        if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
        if (fields.size() != header.size()) {
            throw DataError("CSV record at line " + std::to_string(line_no) + " has " +
                            std::to_string(fields.size()) + " fields, header has " +
                            std::to_string(header.size()));
        }
        Document doc;
        doc.id = record_id(docs.size());
        doc.text = sanitize_utf8(fields[*text_col]);
        if (label_col) doc.label = sanitize_utf8(fields[*label_col]);
        docs.push_back(std::move(doc));
    }
    if (docs.empty()) throw DataError("no records in " + path.string());
    return LabeledCorpus::from_documents(std::move(docs));
}

}  // namespace

LabeledCorpus load_records(const fs::path& path, RecordFormat format,
                           const std::string& text_field, const std::string& label_field,
                           bool require_label) {
    if (!fs::exists(path)) throw DataError("dataset path does not exist: " + path.string());
    switch (format) {
        case RecordFormat::kJsonl:
            return load_jsonl(path, text_field, label_field, require_label);
        case RecordFormat::kCsv:
            return load_csv(path, text_field, label_field, require_label);
    }
    throw DataError("unknown record format");
}

std::pair<LabeledCorpus, LabeledCorpus> stratified_split(const LabeledCorpus& corpus,
                                                         const SplitSpec& spec) {
    check_split_spec(spec);
    std::vector<Document> train_docs, test_docs;

    auto split_group = [&](std::vector<const Document*>& group, uint64_t seed) {
        // group arrives sorted by id (corpus order)
        std::mt19937_64 rng(seed);
        deterministic_shuffle(group, rng);
        auto n_train = static_cast<size_t>(std::llround(spec.train_fraction *
                                                        static_cast<double>(group.size())));
        n_train = std::min(n_train, group.size());
        for (size_t i = 0; i < group.size(); ++i) {
            (i < n_train ? train_docs : test_docs).push_back(*group[i]);
        }
    };

    if (spec.stratified) {
        std::map<std::string, std::vector<const Document*>> by_class;
        for (const auto& doc : corpus.documents) {
            if (!doc.label) throw DataError("unlabeled document in stratified split: " + doc.id);
            by_class[*doc.label].push_back(&doc);
        }
        for (auto& [label, group] : by_class) {
            if (group.size() < 2) {
                throw DataError("class '" + label + "' has fewer than 2 documents (" +
                                std::to_string(group.size()) + "), cannot stratify");
            }
            split_group(group, spec.seed ^ fnv1a64(label));
        }
    } else {
        std::vector<const Document*> all;
        all.reserve(corpus.size());
        for (const auto& doc : corpus.documents) all.push_back(&doc);
        split_group(all, spec.seed);
    }

    return {LabeledCorpus::from_documents(std::move(train_docs)),
            LabeledCorpus::from_documents(std::move(test_docs))};
}

}  // namespace lintext
