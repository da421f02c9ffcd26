#pragma once

#include <string_view>
#include <vector>

namespace lintext {

// Published accuracy figures shipped as read-only reference data. These are
// reported numbers from the cited literature, never recomputed here.
struct LiteratureRow {
    std::string_view dataset;        // name with class count, e.g. "20NewsGroup-20"
    std::string_view model;
    double accuracy;                 // as published (percent for the public sets)
    std::string_view accuracy_text;  // verbatim rendering
    std::string_view reference;      // citation tag, empty for this work's own rows
};

const std::vector<LiteratureRow>& literature_table();
std::vector<LiteratureRow> literature_rows_for(std::string_view dataset);

}  // namespace lintext
