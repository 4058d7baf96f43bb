#include "core/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "core/errors.hpp"

namespace switchcert::config {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw Error(errc::config_error, path.empty() ? what : path + ": " + what);
}

void require_object(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "must be an object");
}

void check_keys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
    for (const auto& item : j.items())
        if (!allowed.count(item.key())) fail(path, "unknown key '" + item.key() + "'");
}

std::string join(const std::string& path, const std::string& name) {
    return path.empty() ? name : path + "." + name;
}

double get_num(const json& j, const std::string& path, const std::string& name) {
    if (!j.contains(name)) fail(path, "missing required key '" + name + "'");
    const json& v = j.at(name);
    if (!v.is_number()) fail(join(path, name), "must be a number");
    return v.get<double>();
}

std::optional<double> opt_num(const json& j, const std::string& path, const std::string& name) {
    if (!j.contains(name)) return std::nullopt;
    const json& v = j.at(name);
    if (!v.is_number()) fail(join(path, name), "must be a number");
    return v.get<double>();
}

long long get_int(const json& j, const std::string& path, const std::string& name) {
    if (!j.contains(name)) fail(path, "missing required key '" + name + "'");
    const json& v = j.at(name);
    if (!v.is_number_integer()) fail(join(path, name), "must be an integer");
    return v.get<long long>();
}

std::string get_str(const json& j, const std::string& path, const std::string& name) {
    if (!j.contains(name)) fail(path, "missing required key '" + name + "'");
    const json& v = j.at(name);
    if (!v.is_string()) fail(join(path, name), "must be a string");
    return v.get<std::string>();
}

Vec2 get_vec2(const json& j, const std::string& path, const std::string& name) {
    const json& v = j.at(name);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        fail(join(path, name), "must be an array of two numbers");
    return {v[0].get<double>(), v[1].get<double>()};
}

void check_mode_id(const std::string& id, const std::string& path) {
    if (id.empty()) fail(path, "mode id must not be empty");
    if (id.find_first_of(", \t\n\r") != std::string::npos || id.front() == '#')
        fail(path, "mode id '" + id + "' may not contain commas, whitespace, or start with '#'");
}

neuron::Params parse_neuron(const json& j) {
    const std::string path = "neuron";
    require_object(j, path);
    check_keys(j, path, {"g_p", "g_h", "m", "o_h", "I", "T_I", "T_0"});
    neuron::Params p;
    p.g_p = get_num(j, path, "g_p");
    p.g_h = get_num(j, path, "g_h");
    p.m = get_num(j, path, "m");
    p.o_h = get_num(j, path, "o_h");
    p.I = get_num(j, path, "I");
    if (auto v = opt_num(j, path, "T_I")) p.T_I = *v;
    if (auto v = opt_num(j, path, "T_0")) p.T_0 = *v;
    return p;
}

std::vector<planar::Mode> parse_modes(const json& j) {
    if (!j.is_array() || j.empty()) fail("modes", "must be a non-empty array");
    std::vector<planar::Mode> modes;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string path = "modes[" + std::to_string(i) + "]";
        const json& mj = j[i];
        require_object(mj, path);
        check_keys(mj, path, {"id", "a", "b", "c", "d", "B"});
        planar::Mode m;
        m.id = get_str(mj, path, "id");
        check_mode_id(m.id, path);
        if (!seen.insert(m.id).second) fail(path, "duplicate mode id '" + m.id + "'");
        m.a = get_num(mj, path, "a");
        m.b = get_num(mj, path, "b");
        m.c = get_num(mj, path, "c");
        m.d = get_num(mj, path, "d");
        if (mj.contains("B")) m.B = get_vec2(mj, path, "B");
        try {
            planar::validate_mode(m);
        } catch (const Error& e) {
            fail(path, e.what());
        }
        modes.push_back(std::move(m));
    }
    return modes;
}

}  // namespace

RunConfig parse(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(errc::config_error, std::string("JSON parse error: ") + e.what());
    }
    require_object(j, "");
    check_keys(j, "", {"neuron", "modes", "signal", "x0", "k", "dt", "seed", "v_th", "v_R",
                       "h_R", "itinerary", "sweep"});

    RunConfig cfg;

    const bool has_neuron = j.contains("neuron");
    const bool has_modes = j.contains("modes");
    if (has_neuron == has_modes)
        fail("", "exactly one of 'neuron' or 'modes' must be present");
    if (has_neuron) cfg.neuron_params = parse_neuron(j.at("neuron"));
    if (has_modes) cfg.raw_modes = parse_modes(j.at("modes"));

    if (j.contains("k")) {
        cfg.k = get_num(j, "", "k");
        if (!(cfg.k > 0.0)) fail("k", "must be positive");
    }
    if (j.contains("x0")) cfg.x0 = get_vec2(j, "", "x0");
    if (j.contains("dt")) {
        cfg.dt = get_num(j, "", "dt");
        if (!(*cfg.dt > 0.0)) fail("dt", "must be positive");
    }
    if (j.contains("seed")) {
        const long long s = get_int(j, "", "seed");
        if (s < 0) fail("seed", "must be nonnegative");
        cfg.seed = static_cast<unsigned long long>(s);
    }

    // Reset block: v_th alone enables the certificate verdict; a full reset
    // rule additionally needs v_R and h_R.
    std::optional<double> v_th = opt_num(j, "", "v_th");
    std::optional<double> v_R = opt_num(j, "", "v_R");
    std::optional<double> h_R_scalar;
    std::map<std::string, double> h_R_map;
    if (j.contains("h_R")) {
        const json& h = j.at("h_R");
        if (h.is_number()) {
            h_R_scalar = h.get<double>();
        } else if (h.is_object()) {
            for (const auto& item : h.items()) {
                if (!item.value().is_number()) fail("h_R." + item.key(), "must be a number");
                h_R_map[item.key()] = item.value().get<double>();
            }
            if (h_R_map.empty()) fail("h_R", "must not be empty");
        } else {
            fail("h_R", "must be a number or an object of per-mode numbers");
        }
    }
    const bool has_h_R = h_R_scalar.has_value() || !h_R_map.empty();
    if ((v_R.has_value() || has_h_R) && !(v_th && v_R && has_h_R))
        fail("", "a reset rule needs v_th, v_R, and h_R together");

    // Signal: exactly one of the two forms.
    if (!j.contains("signal")) fail("", "missing required key 'signal'");
    const json& sj = j.at("signal");
    require_object(sj, "signal");
    check_keys(sj, "signal", {"periodic", "explicit"});
    const bool has_periodic = sj.contains("periodic");
    const bool has_explicit = sj.contains("explicit");
    if (has_periodic == has_explicit)
        fail("signal", "exactly one of 'periodic' or 'explicit' must be present");

    if (has_periodic) {
        const std::string path = "signal.periodic";
        const json& pj = sj.at("periodic");
        require_object(pj, path);
        check_keys(pj, path, {"T_I", "T_0", "periods"});
        const long long periods = get_int(pj, path, "periods");
        if (periods < 1) fail(join(path, "periods"), "must be at least 1");
        if (periods > 1000000) fail(join(path, "periods"), "must be at most 1000000");
        const std::optional<double> T_I = opt_num(pj, path, "T_I");
        const std::optional<double> T_0 = opt_num(pj, path, "T_0");

        if (cfg.neuron_params) {
            // Durations given here override the neuron block so the signal
            // and the certificate always agree on T_I, T_0.
            if (T_I) cfg.neuron_params->T_I = *T_I;
            if (T_0) cfg.neuron_params->T_0 = *T_0;
        } else {
            if (!T_I || !T_0) fail(path, "raw-mode configs must give T_I and T_0 here");
            if (!(*T_I > 0.0) || !(*T_0 > 0.0)) fail(path, "T_I and T_0 must be positive");
            if (cfg.raw_modes.size() != 2)
                fail(path, "a periodic signal over raw modes needs exactly 2 modes");
            const double period = *T_I + *T_0;
            for (long long p = 0; p < periods; ++p) {
                cfg.signal.switches.push_back({p * period, cfg.raw_modes[0].id});
                cfg.signal.switches.push_back({p * period + *T_I, cfg.raw_modes[1].id});
            }
            cfg.signal.horizon = periods * period;
        }
        if (cfg.neuron_params) {
            try {
                cfg.neuron_params->validate();
            } catch (const Error& e) {
                fail("neuron", e.what());
            }
            cfg.signal = neuron::square_wave_signal(*cfg.neuron_params,
                                                    static_cast<int>(periods));
        }
    } else {
        const std::string path = "signal.explicit";
        const json& ej = sj.at("explicit");
        require_object(ej, path);
        check_keys(ej, path, {"switches", "horizon"});
        if (!ej.contains("switches") || !ej.at("switches").is_array() ||
            ej.at("switches").empty())
            fail(join(path, "switches"), "must be a non-empty array");
        const json& sw = ej.at("switches");
        for (std::size_t i = 0; i < sw.size(); ++i) {
            const std::string spath = path + ".switches[" + std::to_string(i) + "]";
            require_object(sw[i], spath);
            check_keys(sw[i], spath, {"t", "mode"});
            sim::SwitchingSignal::Entry entry;
            entry.t = get_num(sw[i], spath, "t");
            entry.mode = get_str(sw[i], spath, "mode");
            check_mode_id(entry.mode, spath);
            cfg.signal.switches.push_back(std::move(entry));
        }
        cfg.signal.horizon = get_num(ej, path, "horizon");
        if (cfg.neuron_params) {
            try {
                cfg.neuron_params->validate();
            } catch (const Error& e) {
                fail("neuron", e.what());
            }
        }
    }
    try {
        cfg.signal.validate();
    } catch (const Error& e) {
        fail("signal", e.what());
    }

    // Everything that names a mode must resolve against the table.
    const sim::ModeTable table = mode_table(cfg);
    for (const auto& entry : cfg.signal.switches) {
        try {
            planar::find_mode(table, entry.mode);
        } catch (const Error& e) {
            fail("signal", e.what());
        }
    }

    if (v_th && v_R && has_h_R) {
        sim::ResetRule rule;
        rule.v_th = *v_th;
        rule.v_R = *v_R;
        if (h_R_scalar) {
            for (const planar::Mode& m : table) rule.h_R[m.id] = *h_R_scalar;
        } else {
            for (const auto& [id, value] : h_R_map) {
                try {
                    planar::find_mode(table, id);
                } catch (const Error& e) {
                    fail("h_R", e.what());
                }
                rule.h_R[id] = value;
            }
        }
        if (!(rule.v_R < rule.v_th)) fail("v_R", "must lie below v_th");
        cfg.reset = rule;
    }
    if (cfg.neuron_params) {
        cfg.neuron_params->v_th = v_th;
        cfg.neuron_params->v_R = v_R;
        if (h_R_scalar) cfg.neuron_params->h_R = h_R_scalar;
    }

    if (j.contains("itinerary")) {
        const json& it = j.at("itinerary");
        if (!it.is_array() || it.size() < 2)
            fail("itinerary", "must be an array of at least two mode ids");
        for (std::size_t i = 0; i < it.size(); ++i) {
            if (!it[i].is_string()) fail("itinerary[" + std::to_string(i) + "]", "must be a string");
            const std::string id = it[i].get<std::string>();
            try {
                planar::find_mode(table, id);
            } catch (const Error& e) {
                fail("itinerary[" + std::to_string(i) + "]", e.what());
            }
            cfg.itinerary.push_back(id);
        }
    }

    if (j.contains("sweep")) {
        const json& swj = j.at("sweep");
        require_object(swj, "sweep");
        check_keys(swj, "sweep", {"T", "k"});
        SweepSpec spec;
        auto read_grid = [&](const char* name, std::vector<double>& out) {
            if (!swj.contains(name)) fail("sweep", std::string("missing required key '") + name + "'");
            const json& arr = swj.at(name);
            if (!arr.is_array() || arr.empty())
                fail(join("sweep", name), "must be a non-empty array of positive numbers");
            for (const json& v : arr) {
                if (!v.is_number() || !(v.get<double>() > 0.0))
                    fail(join("sweep", name), "must be a non-empty array of positive numbers");
                out.push_back(v.get<double>());
            }
        };
        read_grid("T", spec.T);
        read_grid("k", spec.k);
        cfg.sweep = spec;
    }

    return cfg;
}

RunConfig load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(errc::config_error, "cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

sim::ModeTable mode_table(const RunConfig& cfg) {
    if (cfg.neuron_params) {
        const auto [off, on] = neuron::modes(*cfg.neuron_params);
        return {off, on};
    }
    return cfg.raw_modes;
}

}  // namespace switchcert::config
