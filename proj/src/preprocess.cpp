#include "lintext/preprocess.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

#include "lintext/common.hpp"
#include "stopwords_data.hpp"

namespace lintext {

namespace {

#include "unicode_alnum_ranges.inc"

bool is_alnum_codepoint(uint32_t cp) {
    if (cp < 0x80) {
        return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') ||
               (cp >= 'A' && cp <= 'Z');
    }
    size_t lo = 0, hi = std::size(kAlnumRanges);
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        if (cp < kAlnumRanges[mid][0]) {
            hi = mid;
        } else if (cp > kAlnumRanges[mid][1]) {
            lo = mid + 1;
        } else {
            return true;
        }
    }
    return false;
}

bool is_ascii_alnum(char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_ws_or_control(char c) {
    unsigned char u = static_cast<unsigned char>(c);
    return u <= 0x20 || u == 0x7F;
}

bool starts_with_ci(std::string_view s, size_t pos, std::string_view prefix) {
    if (pos + prefix.size() > s.size()) return false;
    for (size_t k = 0; k < prefix.size(); ++k) {
        char a = s[pos + k];
        if (a >= 'A' && a <= 'Z') a = static_cast<char>(a - 'A' + 'a');
        if (a != prefix[k]) return false;
    }
    return true;
}

// First line shaped like "Field-Name: value" (no spaces before the colon)?
bool first_line_is_header(std::string_view s) {
    size_t i = 0;
    while (i < s.size() && s[i] != '\n' && s[i] != ':') {
        unsigned char u = static_cast<unsigned char>(s[i]);
        if (u <= 0x20 || u == 0x7F) return false;
        ++i;
    }
    return i > 0 && i < s.size() && s[i] == ':';
}

std::string strip_headers(std::string_view s) {
    if (!first_line_is_header(s)) return std::string(s);
    size_t line_start = 0;
    while (line_start < s.size()) {
        size_t line_end = s.find('\n', line_start);
        if (line_end == std::string_view::npos) line_end = s.size();
        bool blank = true;
        for (size_t k = line_start; k < line_end; ++k) {
            if (!is_ws_or_control(s[k])) {
                blank = false;
                break;
            }
        }
        if (blank) {
            size_t body = line_end < s.size() ? line_end + 1 : line_end;
            return std::string(s.substr(body));
        }
        if (line_end == s.size()) break;
        line_start = line_end + 1;
    }
    return std::string(s);  // header-shaped but no blank line: keep intact
}

std::string remove_urls(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    size_t i = 0;
    while (i < s.size()) {
        bool boundary = (i == 0) || !is_ascii_alnum(s[i - 1]);
        bool hit = boundary && (starts_with_ci(s, i, "http://") ||
                                starts_with_ci(s, i, "https://") ||
                                starts_with_ci(s, i, "www."));
        if (hit) {
            size_t end = i;
            while (end < s.size() && !is_ws_or_control(s[end])) ++end;
            i = end;
        } else {
            out.push_back(s[i]);
            ++i;
        }
    }
    return out;
}

bool is_email_char(char c) {
    return is_ascii_alnum(c) || c == '.' || c == '-' || c == '_' || c == '+';
}

// domain must contain a dot with email chars on both sides
bool domain_ok(std::string_view domain) {
    for (size_t k = 1; k + 1 < domain.size(); ++k) {
        if (domain[k] == '.' && domain[k - 1] != '.' && domain[k + 1] != '.') return true;
    }
    return false;
}

std::string remove_emails(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    size_t i = 0;
    while (i < s.size()) {
        if (s[i] == '@') {
            size_t local_len = 0;
            while (local_len < out.size() && is_email_char(out[out.size() - 1 - local_len]))
                ++local_len;
            size_t dom_end = i + 1;
            while (dom_end < s.size() && is_email_char(s[dom_end])) ++dom_end;
            std::string_view domain = s.substr(i + 1, dom_end - i - 1);
            if (local_len > 0 && !domain.empty() && domain_ok(domain)) {
                out.resize(out.size() - local_len);
                i = dom_end;
                continue;
            }
        }
        out.push_back(s[i]);
        ++i;
    }
    return out;
}

std::string ascii_lowercase(std::string s) {
    for (char& c : s) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return s;
}

bool all_digits(std::string_view token) {
    size_t i = 0;
    while (i < token.size()) {
        uint32_t cp = 0;
        i += utf8_decode_or_replace(token, i, cp);
        if (cp < '0' || cp > '9') return false;
    }
    return !token.empty();
}

}  // namespace

std::string clean(std::string_view raw, const PreprocessConfig& config) {
    std::string s;
    if (config.strip_newsgroup_headers) {
        s = strip_headers(raw);
    } else {
        s.assign(raw);
    }
    if (config.strip_urls) s = remove_urls(s);
    if (config.strip_emails) s = remove_emails(s);
    if (config.lowercase) s = ascii_lowercase(std::move(s));
    return s;
}

std::vector<std::string> tokenize(std::string_view cleaned, const PreprocessConfig& config) {
    if (config.min_token_chars < 1) throw DataError("min_token_chars must be >= 1");
    std::vector<std::string> tokens;
    const auto& stopwords = english_stopwords();
    size_t i = 0;
    std::string current;
    int current_chars = 0;
    auto flush = [&]() {
        if (current.empty()) return;
        bool keep = current_chars >= config.min_token_chars;
        if (keep && config.strip_numeric_tokens && all_digits(current)) keep = false;
        if (keep && config.remove_stopwords && stopwords.count(current) > 0) keep = false;
        if (keep) tokens.push_back(current);
        current.clear();
        current_chars = 0;
    };
    while (i < cleaned.size()) {
        uint32_t cp = 0;
        size_t n = utf8_decode_or_replace(cleaned, i, cp);
        if (is_alnum_codepoint(cp)) {
            current.append(cleaned.substr(i, n));
            ++current_chars;
        } else {
            flush();
        }
        i += n;
    }
    flush();
    return tokens;
}

std::vector<std::string> clean_and_tokenize(std::string_view raw, const PreprocessConfig& config) {
    return tokenize(clean(raw, config), config);
}

const std::unordered_set<std::string>& english_stopwords() {
    static const std::unordered_set<std::string> words = [] {
        std::unordered_set<std::string> set;
        std::istringstream in{std::string(kStopwordsText)};
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty()) set.insert(line);
        }
        return set;
    }();
    return words;
}

}  // namespace lintext
