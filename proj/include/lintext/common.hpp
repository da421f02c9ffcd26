#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lintext {

// Raised for malformed inputs, missing files, incompatible models and the
// like. The CLI maps it to exit code 2.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// FNV-1a, 64 bit. Used for the config digest, the model-file checksum and
// for deriving per-class seeds (seed XOR fnv1a64(class name)).
constexpr uint64_t kFnv64Offset = 14695981039346656037ULL;
constexpr uint64_t kFnv64Prime = 1099511628211ULL;

inline uint64_t fnv1a64(std::string_view data, uint64_t state = kFnv64Offset) {
    for (unsigned char c : data) {
        state ^= c;
        state *= kFnv64Prime;
    }
    return state;
}

std::string to_hex64(uint64_t value);

// Fisher-Yates driven by std::mt19937_64 with j = next() mod (i+1).
// mt19937_64 is bit-exactly specified by the standard, so the permutation
// depends only on the seed stream, not on platform or standard library.
template <typename T>
void deterministic_shuffle(std::vector<T>& items, std::mt19937_64& rng) {
    for (size_t i = items.size(); i > 1; --i) {
        size_t j = static_cast<size_t>(rng() % i);
        std::swap(items[i - 1], items[j]);
    }
}

// Replaces invalid UTF-8 sequences with U+FFFD. Valid input passes through
// byte-identical.
std::string sanitize_utf8(std::string_view bytes);

// Decodes the UTF-8 sequence at s[i..], yielding U+FFFD and consuming one
// byte on malformed input. Returns the number of bytes consumed (>= 1).
size_t utf8_decode_or_replace(std::string_view s, size_t i, uint32_t& cp);

}  // namespace lintext
