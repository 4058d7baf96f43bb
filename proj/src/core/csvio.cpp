#include "core/csvio.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "core/errors.hpp"
#include "core/jsonw.hpp"

namespace switchcert::csvio {

namespace {

constexpr const char* kHeader = "t,x1,x2,mode,V";

void require_csv_safe(const std::string& id) {
    if (id.empty() || id.find_first_of(",\n\r") != std::string::npos)
        throw Error(errc::invalid_argument, "mode id '" + id + "' is not CSV-safe");
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

[[noreturn]] void bad_line(std::size_t line_no, const std::string& what) {
    throw Error(errc::config_error, "line " + std::to_string(line_no) + ": " + what);
}

double parse_number(const std::string& field, std::size_t line_no) {
    std::size_t consumed = 0;
    double v = 0.0;
    try {
        v = std::stod(field, &consumed);
    } catch (const std::exception&) {
        bad_line(line_no, "not a number: '" + field + "'");
    }
    if (consumed != field.size()) bad_line(line_no, "trailing junk in number: '" + field + "'");
    if (!std::isfinite(v)) bad_line(line_no, "non-finite number: '" + field + "'");
    return v;
}

}  // namespace

std::string write_trajectory(const sim::Trajectory& traj) {
    std::string out = kHeader;
    out += '\n';
    for (const sim::Sample& s : traj.samples) {
        require_csv_safe(s.mode);
        out += jsonw::number(s.t);
        out += ',';
        out += jsonw::number(s.x.x1);
        out += ',';
        out += jsonw::number(s.x.x2);
        out += ',';
        out += s.mode;
        out += ',';
        out += jsonw::number(s.v);
        out += '\n';
    }
    for (const sim::Event& e : traj.events) {
        if (!e.from.empty()) require_csv_safe(e.from);
        if (!e.to.empty()) require_csv_safe(e.to);
        out += "#event,";
        out += jsonw::number(e.t);
        out += ',';
        out += e.kind == sim::EventKind::Switch ? "switch" : "reset";
        out += ',';
        out += e.from;
        out += ',';
        out += e.to;
        out += '\n';
    }
    return out;
}

sim::Trajectory read_trajectory(const std::string& text) {
    sim::Trajectory traj;
    std::size_t line_no = 0;
    bool saw_header = false;

    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        if (!saw_header) {
            if (line != kHeader)
                bad_line(line_no, std::string("expected header ") + kHeader);
            saw_header = true;
            continue;
        }

        if (line.front() == '#') {
            const std::string prefix = "#event,";
            if (line.rfind(prefix, 0) != 0) continue;  // plain comment
            const auto fields = split(line.substr(prefix.size()), ',');
            if (fields.size() != 4) bad_line(line_no, "event line needs t,kind,from,to");
            sim::Event e;
            e.t = parse_number(fields[0], line_no);
            if (fields[1] == "switch")
                e.kind = sim::EventKind::Switch;
            else if (fields[1] == "reset")
                e.kind = sim::EventKind::Reset;
            else
                bad_line(line_no, "unknown event kind '" + fields[1] + "'");
            e.from = fields[2];
            e.to = fields[3];
            traj.events.push_back(e);
            continue;
        }

        const auto fields = split(line, ',');
        if (fields.size() != 5) bad_line(line_no, "expected 5 fields t,x1,x2,mode,V");
        sim::Sample s;
        s.t = parse_number(fields[0], line_no);
        s.x.x1 = parse_number(fields[1], line_no);
        s.x.x2 = parse_number(fields[2], line_no);
        if (fields[3].empty()) bad_line(line_no, "empty mode id");
        s.mode = fields[3];
        s.v = parse_number(fields[4], line_no);
        traj.samples.push_back(s);
    }

    if (!saw_header) throw Error(errc::config_error, "empty document: missing CSV header");
    if (traj.samples.empty()) throw Error(errc::config_error, "trajectory has no data rows");
    return traj;
}

}  // namespace switchcert::csvio
