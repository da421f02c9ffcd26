#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace lintext {

// Cleaning/tokenization knobs. Serialized into every model file so that
// transform-time preprocessing always matches fit-time preprocessing.
struct PreprocessConfig {
    bool lowercase = true;
    bool strip_urls = true;
    bool strip_emails = true;
    bool strip_numeric_tokens = true;
    bool remove_stopwords = false;
    int min_token_chars = 2;  // >= 1, measured in codepoints
    bool strip_newsgroup_headers = false;
};

// Fixed cleaning passes, in order: header stripping (when enabled), URL
// removal, email removal, ASCII lowercasing. Total and idempotent.
//
// URL: a substring starting at a word boundary with "http://", "https://"
// or "www." (ASCII case-insensitive), extending to the next whitespace or
// control character. Email: local@domain over [A-Za-z0-9._+-] where the
// domain contains an interior dot. Header stripping drops everything up to
// and including the first blank line, but only when the first line looks
// like a message header field ("Name: ..." with no spaces before the colon).
std::string clean(std::string_view raw, const PreprocessConfig& config);

// Tokens are maximal runs of Unicode letters and decimal digits (table
// generated from Unicode 13.0). Drops tokens shorter than min_token_chars,
// all-digit tokens when strip_numeric_tokens, and (exact-match) stopwords
// when remove_stopwords.
std::vector<std::string> tokenize(std::string_view cleaned, const PreprocessConfig& config);

std::vector<std::string> clean_and_tokenize(std::string_view raw, const PreprocessConfig& config);

// The bundled English stopword list (data/stopwords_en.txt, 318 lowercase
// words, compiled in so runs never depend on an external file).
const std::unordered_set<std::string>& english_stopwords();

}  // namespace lintext
