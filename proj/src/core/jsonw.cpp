#include "core/jsonw.hpp"

#include <cmath>
#include <cstdio>

namespace switchcert::jsonw {

std::string number(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    out += '"';
    return out;
}

void Writer::comma_if_needed() {
    if (after_key_) {
        after_key_ = false;
        return;
    }
    if (items_.back() > 0) out_ += ',';
    ++items_.back();
}

Writer& Writer::begin_object() {
    comma_if_needed();
    out_ += '{';
    items_.push_back(0);
    return *this;
}

Writer& Writer::end_object() {
    items_.pop_back();
    out_ += '}';
    return *this;
}

Writer& Writer::begin_array() {
    comma_if_needed();
    out_ += '[';
    items_.push_back(0);
    return *this;
}

Writer& Writer::end_array() {
    items_.pop_back();
    out_ += ']';
    return *this;
}

Writer& Writer::key(const std::string& name) {
    if (items_.back() > 0) out_ += ',';
    ++items_.back();
    out_ += quote(name);
    out_ += ':';
    after_key_ = true;
    return *this;
}

Writer& Writer::value(double v) {
    comma_if_needed();
    out_ += number(v);
    return *this;
}

Writer& Writer::value(const std::string& v) {
    comma_if_needed();
    out_ += quote(v);
    return *this;
}

Writer& Writer::value(const char* v) { return value(std::string(v)); }

Writer& Writer::value(bool v) {
    comma_if_needed();
    out_ += v ? "true" : "false";
    return *this;
}

Writer& Writer::value(std::int64_t v) {
    comma_if_needed();
    out_ += std::to_string(v);
    return *this;
}

Writer& Writer::null() {
    comma_if_needed();
    out_ += "null";
    return *this;
}

}  // namespace switchcert::jsonw
