#pragma once

#include <filesystem>
#include <string>

#include "lintext/eval.hpp"

namespace lintext {

std::string report_to_json(const EvalReport& report);
std::string report_to_markdown(const EvalReport& report);
std::string report_to_csv_row(const EvalReport& report);        // header + one row
std::string confusion_to_csv(const EvalReport& report);

// Writes <prefix>.json, <prefix>.md, <prefix>.csv and <prefix>.confusion.csv.
void write_report_files(const EvalReport& report, const std::filesystem::path& prefix);

EvalReport parse_report_json(const std::string& text);

}  // namespace lintext
