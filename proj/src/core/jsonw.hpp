#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace switchcert::jsonw {

/// v rendered with 17 significant digits (round-trip exact for doubles);
/// non-finite values become null, which JSON cannot express as numbers.
std::string number(double v);

/// Minimal streaming writer for the tool's machine-readable output. Tracks
/// nesting only to place commas; callers are responsible for well-formed
/// call order (every test parses the result back, which catches misuse).
class Writer {
public:
    Writer& begin_object();
    Writer& end_object();
    Writer& begin_array();
    Writer& end_array();
    Writer& key(const std::string& name);
    Writer& value(double v);
    Writer& value(const std::string& v);
    Writer& value(const char* v);
    Writer& value(bool v);
    Writer& value(std::int64_t v);
    Writer& null();

    const std::string& str() const { return out_; }

private:
    void comma_if_needed();

    std::string out_;
    // One counter per open container: number of items emitted at that level.
    std::vector<std::size_t> items_{0};
    bool after_key_ = false;
};

/// JSON string literal with the mandatory escapes applied.
std::string quote(const std::string& s);

}  // namespace switchcert::jsonw
