#include "lintext/json_writer.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace lintext {

void append_double(std::string* out, double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite value in JSON output");
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out->append(buf, res.ptr);
}

void JsonWriter::newline_indent() {
    out_->push_back('\n');
    out_->append(2 * stack_.size(), ' ');
}

void JsonWriter::before_value() {
    if (stack_.empty()) return;
    Frame& top = stack_.back();
    if (top.is_array) {
        if (top.has_items) out_->push_back(',');
    } else {
        if (!key_pending_) throw std::logic_error("JSON object value without key");
        key_pending_ = false;
    }
    top.has_items = true;
}

void JsonWriter::begin_object() {
    before_value();
    stack_.push_back({false, false});
    out_->push_back('{');
}

void JsonWriter::end_object() {
    bool had = stack_.back().has_items;
    stack_.pop_back();
    if (had && !compact_) newline_indent();
    out_->push_back('}');
}

void JsonWriter::begin_array() {
    before_value();
    stack_.push_back({true, false});
    out_->push_back('[');
}

void JsonWriter::end_array() {
    stack_.pop_back();
    out_->push_back(']');
}

void JsonWriter::key(std::string_view k) {
    Frame& top = stack_.back();
    if (top.has_items) out_->push_back(',');
    if (!compact_) newline_indent();
    out_->push_back('"');
    write_escaped(k);
    out_->append(compact_ ? "\":" : "\": ");
    key_pending_ = true;
    top.has_items = false;  // comma already written; value must not add one
}

void JsonWriter::write_escaped(std::string_view s) {
    for (unsigned char c : s) {
        if (c == '"') {
            out_->append("\\\"");
        } else if (c == '\\') {
            out_->append("\\\\");
        } else if (c < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", c);
            out_->append(buf);
        } else {
            out_->push_back(static_cast<char>(c));
        }
    }
}

void JsonWriter::value(std::string_view s) {
    before_value();
    out_->push_back('"');
    write_escaped(s);
    out_->push_back('"');
}

void JsonWriter::value(bool b) {
    before_value();
    out_->append(b ? "true" : "false");
}

void JsonWriter::value(uint64_t v) {
    before_value();
    out_->append(std::to_string(v));
}

void JsonWriter::value(int64_t v) {
    before_value();
    out_->append(std::to_string(v));
}

void JsonWriter::value(double v) {
    before_value();
    append_double(out_, v);
}

}  // namespace lintext
