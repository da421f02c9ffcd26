#include "lintext/common.hpp"

#include <array>
#include <cstdio>

namespace lintext {

std::string to_hex64(uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return std::string(buf, 16);
}

namespace {

// Decodes one UTF-8 sequence at s[i..]. Returns the number of bytes consumed
// and writes the codepoint, or returns 0 on an invalid sequence.
// Rejects overlongs, surrogates and codepoints above U+10FFFF.
size_t decode_utf8(std::string_view s, size_t i, uint32_t& cp) {
    unsigned char b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        cp = b0;
        return 1;
    }
    auto cont = [&](size_t k) {
        return i + k < s.size() &&
               (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
    };
    if ((b0 & 0xE0) == 0xC0) {
        if (!cont(1)) return 0;
        cp = (uint32_t(b0 & 0x1F) << 6) | (static_cast<unsigned char>(s[i + 1]) & 0x3F);
        return cp >= 0x80 ? 2 : 0;
    }
    if ((b0 & 0xF0) == 0xE0) {
        if (!cont(1) || !cont(2)) return 0;
        cp = (uint32_t(b0 & 0x0F) << 12) |
             (uint32_t(static_cast<unsigned char>(s[i + 1]) & 0x3F) << 6) |
             (static_cast<unsigned char>(s[i + 2]) & 0x3F);
        if (cp < 0x800 || (cp >= 0xD800 && cp <= 0xDFFF)) return 0;
        return 3;
    }
    if ((b0 & 0xF8) == 0xF0) {
        if (!cont(1) || !cont(2) || !cont(3)) return 0;
        cp = (uint32_t(b0 & 0x07) << 18) |
             (uint32_t(static_cast<unsigned char>(s[i + 1]) & 0x3F) << 12) |
             (uint32_t(static_cast<unsigned char>(s[i + 2]) & 0x3F) << 6) |
             (static_cast<unsigned char>(s[i + 3]) & 0x3F);
        if (cp < 0x10000 || cp > 0x10FFFF) return 0;
        return 4;
    }
    return 0;
}

constexpr std::string_view kReplacement = "\xEF\xBF\xBD";  // U+FFFD

}  // namespace

std::string sanitize_utf8(std::string_view bytes) {
    std::string out;
    out.reserve(bytes.size());
    size_t i = 0;
    while (i < bytes.size()) {
        uint32_t cp = 0;
        size_t n = decode_utf8(bytes, i, cp);
        if (n == 0) {
            out.append(kReplacement);
            ++i;
        } else {
            out.append(bytes.substr(i, n));
            i += n;
        }
    }
    return out;
}

size_t utf8_decode_or_replace(std::string_view s, size_t i, uint32_t& cp) {
    size_t n = decode_utf8(s, i, cp);
    if (n == 0) {
        cp = 0xFFFD;
        return 1;
    }
    return n;
}

}  // namespace lintext
