#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lintext {

// Streaming JSON writer with byte-deterministic output: objects are pretty
// printed (2-space indent), arrays are compact, doubles use the shortest
// round-trip encoding (std::to_chars), strings escape quote/backslash and
// control characters only. Callers must emit object keys in sorted order so
// that output is canonical.
class JsonWriter {
public:
    explicit JsonWriter(std::string* out, bool compact = false)
        : out_(out), compact_(compact) {}

    void begin_object();
    void end_object();
    void begin_array();
    void end_array();
    void key(std::string_view k);
    void value(std::string_view s);
    void value(const char* s) { value(std::string_view(s)); }
    void value(bool b);
    void value(uint64_t v);
    void value(int64_t v);
    void value(double v);

private:
    void before_value();
    void newline_indent();
    void write_escaped(std::string_view s);

    struct Frame {
        bool is_array = false;
        bool has_items = false;
    };
    std::string* out_;
    std::vector<Frame> stack_;
    bool key_pending_ = false;
    bool compact_ = false;
};

// Appends the shortest round-trip decimal encoding of v.
void append_double(std::string* out, double v);

}  // namespace lintext
