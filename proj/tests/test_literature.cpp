#include <doctest.h>

#include "lintext/literature.hpp"

using namespace lintext;

namespace {

const LiteratureRow* find_row(const std::vector<LiteratureRow>& rows, std::string_view model) {
    for (const auto& r : rows) {
        if (r.model == model) return &r;
    }
    return nullptr;
}

}  // namespace

TEST_CASE("shipped literature table carries the published figures") {
    auto news = literature_rows_for("20NewsGroup-20");
    CHECK(news.size() == 24);
    auto* tensor_gcn = find_row(news, "TensorGCN");
    REQUIRE(tensor_gcn != nullptr);
    CHECK(tensor_gcn->accuracy == 87.74);
    CHECK(tensor_gcn->accuracy_text == "87.74");
    CHECK(tensor_gcn->reference == "[29]");
    auto* svm_news = find_row(news, "SVM+TFIDF");
    REQUIRE(svm_news != nullptr);
    CHECK(svm_news->accuracy == 90.0);

    auto bbc = literature_rows_for("BBCNews-5");
    CHECK(bbc.size() == 17);
    // two BERT rows from different studies coexist
    int bert_rows = 0;
    for (const auto& r : bbc) bert_rows += (r.model == "BERT");
    CHECK(bert_rows == 2);
    bool has_bert_982 = false;
    for (const auto& r : bbc) {
        if (r.model == "BERT" && r.accuracy_text == "98.2") has_bert_982 = true;
    }
    CHECK(has_bert_982);
    auto* svm_bbc = find_row(bbc, "SVM+TFIDF");
    REQUIRE(svm_bbc != nullptr);
    CHECK(svm_bbc->accuracy_text == "98.0");

    auto tickets = literature_rows_for("ITSupportTickets-12");
    CHECK(tickets.size() == 5);
    auto* svm_tickets = find_row(tickets, "SVM+TFIDF");
    REQUIRE(svm_tickets != nullptr);
    CHECK(svm_tickets->accuracy == 0.79);

    CHECK(literature_rows_for("Unknown-3").empty());
    CHECK(literature_table().size() == 24 + 17 + 5);
}
