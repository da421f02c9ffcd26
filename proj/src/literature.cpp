#include "lintext/literature.hpp"

namespace lintext {

const std::vector<LiteratureRow>& literature_table() {
    static const std::vector<LiteratureRow> rows = {
        {"20NewsGroup-20", "TFIDF with Naive-Bayes", 81.69, "81.69", "[25]"},
        {"20NewsGroup-20", "GloVe+Average", 80.43, "80.43", "[25]"},
        {"20NewsGroup-20", "GloVe+Attention", 81.65, "81.65", "[25]"},
        {"20NewsGroup-20", "LSTM+CNN", 79.74, "79.74", "[25]"},
        {"20NewsGroup-20", "BiLSTM+Max", 83.02, "83.02", "[25]"},
        {"20NewsGroup-20", "BiLSTM+Attention", 81.76, "81.76", "[25]"},
        {"20NewsGroup-20", "Universal Sentence Encoder (USE)", 81.76, "81.76", "[25]"},
        {"20NewsGroup-20", "ULMFiT", 82.4, "82.4", "[25]"},
        {"20NewsGroup-20", "Hierarchical Attention Network (HAN)", 85.01, "85.01", "[25]"},
        {"20NewsGroup-20", "BERT", 85.78, "85.78", "[25]"},
        {"20NewsGroup-20", "DistilBERT", 85.43, "85.43", "[25]"},
        {"20NewsGroup-20", "fastText", 79.4, "79.4", "[26]"},
        {"20NewsGroup-20", "MS-CNN", 86.1, "86.1", "[27]"},
        {"20NewsGroup-20", "Text GCN", 86.3, "86.3", "[28]"},
        {"20NewsGroup-20", "TensorGCN", 87.74, "87.74", "[29]"},
        {"20NewsGroup-20", "Simplified GCN", 88.50, "88.50", "[30]"},
        {"20NewsGroup-20", "MLP over BERT", 85.5, "85.5", "[27]"},
        {"20NewsGroup-20", "LSTM over BERT", 84.7, "84.7", "[27]"},
        {"20NewsGroup-20", "LEAM", 81.91, "81.91", "[31]"},
        {"20NewsGroup-20", "CogLTX (Glove init)", 87.0, "87.0", "[32]"},
        {"20NewsGroup-20", "BoW + SVM", 63.0, "63.0", "[32]"},
        {"20NewsGroup-20", "Bi-LSTM", 73.2, "73.2", "[32]"},
        {"20NewsGroup-20", "RoBERTaGCN", 89.5, "89.5", "[33]"},
        {"20NewsGroup-20", "SVM+TFIDF", 90.0, "90.0", ""},
        {"BBCNews-5", "BERT", 97.0, "97", "[34]"},
        {"BBCNews-5", "DistilBERT", 97.0, "97", "[34]"},
        {"BBCNews-5", "XLM", 97.0, "97", "[34]"},
        {"BBCNews-5", "RoBERTa", 99.0, "99", "[34]"},
        {"BBCNews-5", "XLNET", 98.0, "98", "[34]"},
        {"BBCNews-5", "TFIDF with Naive-Bayes", 95.73, "95.73", "[24]"},
        {"BBCNews-5", "GloVe+Average", 94.16, "94.16", "[25]"},
        {"BBCNews-5", "GloVe+Attention", 95.28, "95.28", "[25]"},
        {"BBCNews-5", "LSTM+CNN", 96.18, "96.18", "[25]"},
        {"BBCNews-5", "BiLSTM+Max", 95.73, "95.73", "[25]"},
        {"BBCNews-5", "BiLSTM+Attention", 96.63, "96.63", "[25]"},
        {"BBCNews-5", "Universal Sentence Encoder (USE)", 96.63, "96.63", "[25]"},
        {"BBCNews-5", "ULMFiT", 97.07, "97.07", "[25]"},
        {"BBCNews-5", "Hierarchical Attention Network (HAN)", 97.75, "97.75", "[25]"},
        {"BBCNews-5", "BERT", 98.2, "98.2", "[25]"},
        {"BBCNews-5", "DistilBERT", 97.3, "97.3", "[25]"},
        {"BBCNews-5", "SVM+TFIDF", 98.0, "98.0", ""},
        {"ITSupportTickets-12", "BERT", 0.79, "0.79", ""},
        {"ITSupportTickets-12", "DistilBERT", 0.78, "0.78", ""},
        {"ITSupportTickets-12", "XLM", 0.79, "0.79", ""},
        {"ITSupportTickets-12", "RoBERTa", 0.79, "0.79", ""},
        {"ITSupportTickets-12", "SVM+TFIDF", 0.79, "0.79", ""},
    };
    return rows;
}

std::vector<LiteratureRow> literature_rows_for(std::string_view dataset) {
    std::vector<LiteratureRow> out;
    for (const auto& row : literature_table()) {
        if (row.dataset == dataset) out.push_back(row);
    }
    return out;
}

}  // namespace lintext
