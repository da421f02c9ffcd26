#include "lintext/report_io.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "lintext/common.hpp"
#include "lintext/json_writer.hpp"

using nlohmann::json;

namespace lintext {

namespace {

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

// CSV field with RFC 4180 quoting when needed
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write report file: " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

}  // namespace

std::string report_to_json(const EvalReport& r) {
    std::string out;
    JsonWriter w(&out);
    w.begin_object();
    w.key("accuracy"); w.value(r.accuracy);
    w.key("classes");
    w.begin_array();
    for (const auto& c : r.classes) w.value(c);
    w.end_array();
    w.key("config_digest"); w.value(r.config_digest);
    w.key("confusion");
    w.begin_array();
    for (const auto& row : r.confusion) {
        w.begin_array();
        for (uint64_t v : row) w.value(v);
        w.end_array();
    }
    w.end_array();
    w.key("dataset"); w.value(r.dataset_name_with_class_count);
    w.key("macro_f1"); w.value(r.macro_f1);
    w.key("n_test"); w.value(r.n_test);
    w.key("per_class");
    w.begin_array();
    for (size_t c = 0; c < r.classes.size(); ++c) {
        w.begin_object();
        w.key("class"); w.value(r.classes[c]);
        w.key("degenerate"); w.value(r.per_class[c].degenerate);
        w.key("f1"); w.value(r.per_class[c].f1);
        w.key("precision"); w.value(r.per_class[c].precision);
        w.key("recall"); w.value(r.per_class[c].recall);
        w.end_object();
    }
    w.end_array();
    w.key("solver_converged");
    w.begin_array();
    for (uint8_t b : r.solver_converged) w.value(b != 0);
    w.end_array();
    w.key("split_seed"); w.value(r.split_seed);
    w.key("train_fraction"); w.value(r.train_fraction);
    w.end_object();
    out.push_back('\n');
    return out;
}

std::string report_to_markdown(const EvalReport& r) {
    std::string md;
    md += "# Evaluation report: " + r.dataset_name_with_class_count + "\n\n";
    md += "| field | value |\n|---|---|\n";
    md += "| accuracy | " + fixed(r.accuracy, 4) + " |\n";
    md += "| macro F1 | " + fixed(r.macro_f1, 4) + " |\n";
    md += "| test documents | " + std::to_string(r.n_test) + " |\n";
    md += "| split seed | " + std::to_string(r.split_seed) + " |\n";
    md += "| train fraction | " + fixed(r.train_fraction, 4) + " |\n";
    md += "| config digest | " + r.config_digest + " |\n";
    bool all_converged = true;
    for (uint8_t b : r.solver_converged) all_converged = all_converged && b != 0;
    md += std::string("| solver converged | ") + (all_converged ? "yes" : "NO (see per-class flags)") + " |\n";
    md += "\n## Per-class metrics\n\n";
    md += "| class | precision | recall | F1 | converged |\n|---|---|---|---|---|\n";
    for (size_t c = 0; c < r.classes.size(); ++c) {
        md += "| " + r.classes[c] + " | " + fixed(r.per_class[c].precision, 4) + " | " +
              fixed(r.per_class[c].recall, 4) + " | " + fixed(r.per_class[c].f1, 4) + " | " +
              (c < r.solver_converged.size() && r.solver_converged[c] ? "yes" : "no") + " |\n";
    }
    md += "\n## Confusion matrix (rows = gold, columns = predicted)\n\n";
    md += "| gold \\ predicted |";
    for (const auto& c : r.classes) md += " " + c + " |";
    md += "\n|---|";
    for (size_t c = 0; c < r.classes.size(); ++c) md += "---|";
    md += "\n";
    for (size_t i = 0; i < r.classes.size(); ++i) {
        md += "| " + r.classes[i] + " |";
        for (size_t j = 0; j < r.classes.size(); ++j) {
            md += " " + std::to_string(r.confusion[i][j]) + " |";
        }
        md += "\n";
    }
    return md;
}

std::string report_to_csv_row(const EvalReport& r) {
    bool all_converged = true;
    for (uint8_t b : r.solver_converged) all_converged = all_converged && b != 0;
    std::string csv =
        "dataset,n_test,accuracy,macro_f1,split_seed,train_fraction,config_digest,all_converged\n";
    std::string acc, mf1, frac;
    append_double(&acc, r.accuracy);
    append_double(&mf1, r.macro_f1);
    append_double(&frac, r.train_fraction);
    csv += csv_field(r.dataset_name_with_class_count) + "," + std::to_string(r.n_test) + "," +
           acc + "," + mf1 + "," + std::to_string(r.split_seed) + "," + frac + "," +
           r.config_digest + "," + (all_converged ? "true" : "false") + "\n";
    return csv;
}

std::string confusion_to_csv(const EvalReport& r) {
    std::string csv = "gold\\predicted";
    for (const auto& c : r.classes) csv += "," + csv_field(c);
    csv += "\n";
    for (size_t i = 0; i < r.classes.size(); ++i) {
        csv += csv_field(r.classes[i]);
        for (size_t j = 0; j < r.classes.size(); ++j) {
            csv += "," + std::to_string(r.confusion[i][j]);
        }
        csv += "\n";
    }
    return csv;
}

void write_report_files(const EvalReport& report, const std::filesystem::path& prefix) {
    write_file(prefix.string() + ".json", report_to_json(report));
    write_file(prefix.string() + ".md", report_to_markdown(report));
    write_file(prefix.string() + ".csv", report_to_csv_row(report));
    write_file(prefix.string() + ".confusion.csv", confusion_to_csv(report));
}

EvalReport parse_report_json(const std::string& text) {
    json j = json::parse(text);
    EvalReport r;
    r.accuracy = j.at("accuracy").get<double>();
    r.classes = j.at("classes").get<std::vector<std::string>>();
    r.config_digest = j.at("config_digest").get<std::string>();
    r.confusion = j.at("confusion").get<std::vector<std::vector<uint64_t>>>();
    r.dataset_name_with_class_count = j.at("dataset").get<std::string>();
    r.macro_f1 = j.at("macro_f1").get<double>();
    r.n_test = j.at("n_test").get<uint64_t>();
    for (const auto& pc : j.at("per_class")) {
        ClassMetrics cm;
        cm.degenerate = pc.at("degenerate").get<bool>();
        cm.f1 = pc.at("f1").get<double>();
        cm.precision = pc.at("precision").get<double>();
        cm.recall = pc.at("recall").get<double>();
        r.per_class.push_back(cm);
    }
    for (const auto& b : j.at("solver_converged")) {
        r.solver_converged.push_back(b.get<bool>() ? 1 : 0);
    }
    r.split_seed = j.at("split_seed").get<uint64_t>();
    r.train_fraction = j.at("train_fraction").get<double>();
    return r;
}

}  // namespace lintext
