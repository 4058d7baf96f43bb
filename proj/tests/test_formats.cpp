#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <string>

#include <json.hpp>

#include "core/commands.hpp"
#include "core/config.hpp"
#include "core/csvio.hpp"
#include "core/errors.hpp"
#include "core/jsonw.hpp"
#include "core/neuron.hpp"
#include "core/sim.hpp"
#include "core/svg.hpp"

using namespace switchcert;
using doctest::Approx;
using nlohmann::json;

namespace {

errc thrown_code(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error to be thrown");
    return errc::invalid_argument;
}

std::string error_message(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.what();
    }
    FAIL("expected an Error to be thrown");
    return {};
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = "/tmp/switchcert_fmt_" + name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    REQUIRE(out.good());
    out << content;
    return path;
}

sim::Trajectory small_trajectory() {
    const sim::ModeTable table{{"OFF", -0.75, 0.15, -1.0, -0.35, {0.0, 0.0}},
                               {"ON", -0.75, 0.15, -1.0, -0.35, {1.0, 0.0}}};
    sim::SwitchingSignal signal;
    signal.switches = {{0.0, "ON"}, {1.0, "OFF"}};
    signal.horizon = 2.0;
    return sim::simulate(table, signal, {0.1, -0.3}, 0.05);
}

const std::string kNeuronDoc = R"({
    "neuron": {"g_p": 0.75, "g_h": 0.15, "m": 1.0, "o_h": 0.35, "I": 1.0},
    "signal": {"periodic": {"T_I": 3.84, "T_0": 3.84, "periods": 2}},
    "k": 0.2,
    "v_th": 2.6,
    "x0": [0.0, 0.0]
})";

}  // namespace

TEST_CASE("jsonw numbers round-trip doubles at 17 digits") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> dist(-1e6, 1e6);
    for (int i = 0; i < 500; ++i) {
        const double v = dist(rng) * std::pow(10.0, static_cast<int>(rng() % 13) - 6);
        CHECK(std::stod(jsonw::number(v)) == v);
    }
    CHECK(jsonw::number(0.0) == "0");
    CHECK(jsonw::number(std::numeric_limits<double>::infinity()) == "null");
    CHECK(jsonw::number(std::nan("")) == "null");
}

TEST_CASE("jsonw writer produces parseable documents") {
    jsonw::Writer w;
    w.begin_object();
    w.key("name").value("tool \"quoted\"\n");
    w.key("count").value(static_cast<std::int64_t>(42));
    w.key("ratio").value(0.1);
    w.key("flag").value(true);
    w.key("nothing").null();
    w.key("items").begin_array();
    w.value(1.5).value(2.5);
    w.begin_object().key("inner").value(false).end_object();
    w.end_array();
    w.end_object();

    const json j = json::parse(w.str());
    CHECK(j["name"] == "tool \"quoted\"\n");
    CHECK(j["count"] == 42);
    CHECK(j["ratio"].get<double>() == Approx(0.1).epsilon(1e-17));
    CHECK(j["flag"] == true);
    CHECK(j["nothing"].is_null());
    CHECK(j["items"].size() == 3);
    CHECK(j["items"][2]["inner"] == false);
}

TEST_CASE("jsonw quote escapes control characters") {
    CHECK(jsonw::quote("a\"b") == "\"a\\\"b\"");
    CHECK(jsonw::quote("a\\b") == "\"a\\\\b\"");
    CHECK(jsonw::quote("\n\t\r") == "\"\\n\\t\\r\"");
    CHECK(json::parse(jsonw::quote(std::string("\x01\x1f"))).get<std::string>() ==
          "\x01\x1f");
}

TEST_CASE("trajectory CSV round-trips losslessly") {
    const sim::Trajectory traj = small_trajectory();
    const std::string text = csvio::write_trajectory(traj);
    CHECK(text.rfind("t,x1,x2,mode,V\n", 0) == 0);

    const sim::Trajectory back = csvio::read_trajectory(text);
    REQUIRE(back.samples.size() == traj.samples.size());
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        CHECK(back.samples[i].t == traj.samples[i].t);
        CHECK(back.samples[i].x.x1 == traj.samples[i].x.x1);
        CHECK(back.samples[i].x.x2 == traj.samples[i].x.x2);
        CHECK(back.samples[i].v == traj.samples[i].v);
        CHECK(back.samples[i].mode == traj.samples[i].mode);
    }
    REQUIRE(back.events.size() == traj.events.size());
    for (std::size_t i = 0; i < traj.events.size(); ++i) {
        CHECK(back.events[i].t == traj.events[i].t);
        CHECK(back.events[i].kind == traj.events[i].kind);
        CHECK(back.events[i].from == traj.events[i].from);
        CHECK(back.events[i].to == traj.events[i].to);
    }
}

TEST_CASE("trajectory CSV tolerates CRLF and plain comments") {
    std::string text = "t,x1,x2,mode,V\r\n0,1,2,M,3\r\n# a note\r\n0.5,1.5,2.5,M,3.5\r\n";
    const sim::Trajectory traj = csvio::read_trajectory(text);
    REQUIRE(traj.samples.size() == 2);
    CHECK(traj.samples[1].x.x1 == 1.5);
    CHECK(traj.events.empty());
}

TEST_CASE("trajectory CSV rejects malformed input with line numbers") {
    CHECK(thrown_code([] { csvio::read_trajectory(""); }) == errc::config_error);
    CHECK(thrown_code([] { csvio::read_trajectory("x1,x2\n1,2\n"); }) == errc::config_error);
    // Header but no data rows.
    CHECK(thrown_code([] { csvio::read_trajectory("t,x1,x2,mode,V\n"); }) ==
          errc::config_error);
    CHECK(error_message([] {
        csvio::read_trajectory("t,x1,x2,mode,V\n0,1,2,M,3\nnot-a-number,1,2,M,3\n");
    }).find("line 3") != std::string::npos);
    CHECK(thrown_code([] { csvio::read_trajectory("t,x1,x2,mode,V\n0,1,2,M\n"); }) ==
          errc::config_error);
    CHECK(thrown_code([] {
        csvio::read_trajectory("t,x1,x2,mode,V\n0,1,2,M,3\n#event,bad\n");
    }) == errc::config_error);
    CHECK(thrown_code([] { csvio::read_trajectory("t,x1,x2,mode,V\n0,1,inf,M,3\n"); }) ==
          errc::config_error);
}

TEST_CASE("config parses a neuron document") {
    const config::RunConfig cfg = config::parse(kNeuronDoc);
    REQUIRE(cfg.neuron_params.has_value());
    CHECK(cfg.neuron_params->g_p == 0.75);
    CHECK(cfg.neuron_params->T_I == 3.84);  // copied back from the signal block
    CHECK(cfg.neuron_params->v_th == 2.6);
    CHECK(cfg.raw_modes.empty());
    CHECK(cfg.k == 0.2);
    REQUIRE(cfg.signal.switches.size() == 4);
    CHECK(cfg.signal.switches[0].mode == "ON");
    CHECK(cfg.signal.switches[1].mode == "OFF");
    CHECK(cfg.signal.horizon == Approx(15.36));
    CHECK(config::mode_table(cfg).size() == 2);
}

TEST_CASE("config parses raw modes with explicit signals") {
    const std::string doc = R"({
        "modes": [
            {"id": "M1", "a": -1.0, "b": 0.5, "c": -0.5, "d": -2.0, "B": [1.0, 0.0]},
            {"id": "M2", "a": -2.0, "b": 0.5, "c": -0.5, "d": -1.0}
        ],
        "signal": {"explicit": {"switches": [{"t": 0.0, "mode": "M1"},
                                             {"t": 1.5, "mode": "M2"}],
                                "horizon": 4.0}},
        "k": 0.7,
        "dt": 0.01,
        "seed": 5,
        "itinerary": ["M1", "M2"]
    })";
    const config::RunConfig cfg = config::parse(doc);
    CHECK_FALSE(cfg.neuron_params.has_value());
    REQUIRE(cfg.raw_modes.size() == 2);
    CHECK(cfg.raw_modes[1].B.x1 == 0.0);  // B defaults to zero
    CHECK(cfg.signal.horizon == 4.0);
    CHECK(cfg.dt == 0.01);
    CHECK(cfg.seed == 5);
    CHECK(cfg.itinerary.size() == 2);
}

TEST_CASE("config rejects structural mistakes") {
    auto reject = [](const std::string& doc, const std::string& needle) {
        const std::string msg = error_message([&] { config::parse(doc); });
        INFO("message: ", msg);
        CHECK(msg.find(needle) != std::string::npos);
    };

    reject("{", "JSON parse error");
    reject("[]", "must be an object");
    reject(R"({"signal": {"periodic": {"T_I": 1, "T_0": 1, "periods": 1}}})",
           "exactly one of 'neuron' or 'modes'");
    reject(R"({"neuron": {"g_p": 1, "g_h": 1, "m": 1, "o_h": 1, "I": 1},
               "modes": [{"id": "M", "a": -1, "b": 1, "c": -1, "d": -2}],
               "signal": {"periodic": {"T_I": 1, "T_0": 1, "periods": 1}}})",
           "exactly one of 'neuron' or 'modes'");
    reject(R"({"neuron": {"g_p": 1, "g_h": 1, "m": 1, "o_h": 1, "I": 1, "bogus": 2},
               "signal": {"periodic": {"T_I": 1, "T_0": 1, "periods": 1}}})",
           "unknown key 'bogus'");
    reject(R"({"neuron": {"g_p": 1, "g_h": 1, "m": 1, "o_h": 1, "I": 1},
               "signal": {"periodic": {"T_I": 1, "T_0": 1, "periods": 1}}, "typo": 1})",
           "unknown key 'typo'");
    reject(R"({"neuron": {"g_p": 1, "g_h": 1, "m": 1, "o_h": 1, "I": 1},
               "signal": {"periodic": {"T_I": 1, "T_0": 1, "periods": 0}}})",
           "periods");
    reject(R"({"neuron": {"g_p": 1, "g_h": 1, "m": 1, "o_h": 1, "I": 1},
               "signal": {"periodic": {"T_I": 1, "T_0": 1, "periods": 2000000}}})",
           "periods");
    reject(R"({"neuron": {"g_p": 1, "g_h": 1, "m": 1, "o_h": 1, "I": 1},
               "signal": {}})",
           "exactly one of 'periodic' or 'explicit'");
    reject(R"({"neuron": {"g_p": 1, "g_h": 1, "m": 1, "o_h": 1, "I": 1},
               "signal": {"periodic": {"T_I": 1, "T_0": 1, "periods": 1}}, "k": 0})",
           "k: must be positive");
    reject(R"({"neuron": {"g_p": 1, "g_h": 1, "m": 1, "o_h": 1, "I": 1},
               "signal": {"periodic": {"T_I": 1, "T_0": 1, "periods": 1}}, "dt": -1})",
           "dt");
    reject(R"({"neuron": {"g_p": 1, "g_h": 1, "m": 1, "o_h": 1, "I": 1},
               "signal": {"periodic": {"T_I": 1, "T_0": 1, "periods": 1}}, "seed": -4})",
           "seed");
    // Matrix validation failures surface as config errors with the mode path.
    reject(R"({"modes": [{"id": "M", "a": 1, "b": 1, "c": 1, "d": 1}],
               "signal": {"explicit": {"switches": [{"t": 0, "mode": "M"}], "horizon": 1}}})",
           "modes[0]");
    reject(R"({"modes": [{"id": "bad id", "a": -1, "b": 1, "c": -1, "d": -2}],
               "signal": {"explicit": {"switches": [{"t": 0, "mode": "bad id"}], "horizon": 1}}})",
           "whitespace");
    reject(R"({"modes": [{"id": "M", "a": -1, "b": 1, "c": -1, "d": -2}],
               "signal": {"explicit": {"switches": [{"t": 0, "mode": "OTHER"}], "horizon": 1}}})",
           "OTHER");
    reject(R"({"modes": [{"id": "M", "a": -1, "b": 1, "c": -1, "d": -2}],
               "signal": {"periodic": {"T_I": 1, "T_0": 1, "periods": 1}}})",
           "exactly 2 modes");
}

TEST_CASE("config reset rule validation") {
    auto with_reset = [](const std::string& extras) {
        return std::string(R"({
            "neuron": {"g_p": 0.75, "g_h": 0.15, "m": 1.0, "o_h": 0.35, "I": 1.0},
            "signal": {"periodic": {"T_I": 3.84, "T_0": 3.84, "periods": 1}})") +
               extras + "}";
    };

    // v_th alone enables the non-spiking verdict but no reset rule.
    const config::RunConfig only_th = config::parse(with_reset(R"(, "v_th": 2.6)"));
    CHECK(only_th.neuron_params->v_th == 2.6);
    CHECK_FALSE(only_th.reset.has_value());

    const config::RunConfig full =
        config::parse(with_reset(R"(, "v_th": 1.0, "v_R": -0.5, "h_R": 0.2)"));
    REQUIRE(full.reset.has_value());
    CHECK(full.reset->v_th == 1.0);
    CHECK(full.reset->v_R == -0.5);
    CHECK(full.reset->h_R.at("ON") == 0.2);
    CHECK(full.reset->h_R.at("OFF") == 0.2);

    CHECK(thrown_code([&] { config::parse(with_reset(R"(, "v_R": -0.5)")); }) ==
          errc::config_error);
    CHECK(thrown_code([&] {
        config::parse(with_reset(R"(, "v_th": 1.0, "v_R": 1.5, "h_R": 0.2)"));
    }) == errc::config_error);

    // Per-mode h_R spelling.
    const config::RunConfig per_mode = config::parse(
        with_reset(R"(, "v_th": 1.0, "v_R": -0.5, "h_R": {"ON": 0.1, "OFF": 0.3})"));
    REQUIRE(per_mode.reset.has_value());
    CHECK(per_mode.reset->h_R.at("ON") == 0.1);
    CHECK(per_mode.reset->h_R.at("OFF") == 0.3);
}

TEST_CASE("config load reports unreadable files as config errors") {
    CHECK(thrown_code([] { config::load("/nonexistent/nowhere.json"); }) ==
          errc::config_error);
    const std::string path = write_temp("ok.json", kNeuronDoc);
    CHECK(config::load(path).neuron_params.has_value());
}

TEST_CASE("svg render is self-contained and complete") {
    const sim::Trajectory traj = small_trajectory();
    const planar::Lyapunov v{1.0, 0.15, {0.5, -1.0}, 0.7};
    const std::string image = svg::render(
        traj, {{v, 0.2, "N(k)", "#707070"}, {v, 2.9, "N(kbar)", "#b02a2a"}}, 2.6);

    CHECK(image.rfind("<svg", 0) == 0);
    CHECK(image.find("</svg>") != std::string::npos);
    CHECK(image.find("<polyline") != std::string::npos);
    // One polygon per level set.
    std::size_t polygons = 0;
    for (std::size_t pos = image.find("<polygon"); pos != std::string::npos;
         pos = image.find("<polygon", pos + 1))
        ++polygons;
    CHECK(polygons == 2);
    CHECK(image.find("N(kbar)") != std::string::npos);
    // The threshold line is present exactly when requested.
    CHECK(image.find("stroke-dasharray") != std::string::npos);
    const std::string plain = svg::render(traj, {}, std::nullopt);
    CHECK(plain.find("stroke-dasharray") == std::string::npos);
    // No external references.
    CHECK(image.find("href") == std::string::npos);
    CHECK(image.find("url(") == std::string::npos);
}

TEST_CASE("command layer: certify") {
    const std::string good = write_temp("certify.json", kNeuronDoc);
    const commands::Result r = commands::certify(good);
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.output);
    // The certificate schema is pinned: exactly these keys.
    CHECK(j.size() == 8);
    for (const char* key :
         {"k", "v_I", "h_I", "k_bar", "tau_d", "v_bound", "dwell_ok", "nonspiking_ok"})
        CHECK(j.contains(key));
    CHECK(j["tau_d"].get<double>() == Approx(3.8365517703754855).epsilon(1e-13));
    CHECK(j["dwell_ok"] == true);
    CHECK(j["nonspiking_ok"] == true);

    // Failing dwell drives the exit code to 1, with the certificate printed.
    std::string failing = kNeuronDoc;
    const auto pos = failing.find("3.84");
    failing.replace(pos, 4, "2.00");
    const commands::Result bad = commands::certify(write_temp("certify_bad.json", failing));
    CHECK(bad.exit_code == 1);
    CHECK(json::parse(bad.output)["dwell_ok"] == false);

    // Without v_th the key is null and does not gate the exit code.
    std::string no_th = kNeuronDoc;
    no_th.replace(no_th.find("\"v_th\": 2.6,"), 12, "");
    const commands::Result open = commands::certify(write_temp("certify_noth.json", no_th));
    CHECK(open.exit_code == 0);
    CHECK(json::parse(open.output)["nonspiking_ok"].is_null());

    CHECK(commands::certify("/nonexistent.json").exit_code == 2);
    CHECK_FALSE(commands::certify("/nonexistent.json").diagnostic.empty());
}

TEST_CASE("command layer: simulate and verify round trip") {
    const std::string cfg = write_temp("simverify.json", kNeuronDoc);
    const std::string csv = "/tmp/switchcert_fmt_run.csv";
    const std::string svg_path = "/tmp/switchcert_fmt_run.svg";

    const commands::Result sim_r = commands::simulate(cfg, csv, svg_path);
    CHECK(sim_r.exit_code == 0);
    const json summary = json::parse(sim_r.output);
    CHECK(summary["switches"] == 3);
    CHECK(summary["resets"] == 0);
    CHECK(summary["horizon"].get<double>() == Approx(15.36));

    std::ifstream csv_in(csv);
    REQUIRE(csv_in.good());
    std::string csv_text((std::istreambuf_iterator<char>(csv_in)),
                         std::istreambuf_iterator<char>());
    CHECK(csv_text.rfind("t,x1,x2,mode,V\n", 0) == 0);

    std::ifstream svg_in(svg_path);
    REQUIRE(svg_in.good());
    std::string svg_text((std::istreambuf_iterator<char>(svg_in)),
                         std::istreambuf_iterator<char>());
    CHECK(svg_text.rfind("<svg", 0) == 0);

    const commands::Result ver = commands::verify(cfg, csv);
    CHECK(ver.exit_code == 0);
    const json report = json::parse(ver.output);
    CHECK(report["overall"] == true);
    CHECK(report["switch_checks"].is_array());
    CHECK(report["tube_checks"].is_array());
    for (const auto& c : report["switch_checks"]) {
        CHECK(c.contains("t"));
        CHECK(c.contains("value"));
        CHECK(c.contains("bound"));
        CHECK(c.contains("pass"));
    }
    for (const auto& c : report["tube_checks"]) {
        CHECK(c.contains("t_begin"));
        CHECK(c.contains("t_end"));
        CHECK(c.contains("mode"));
        CHECK(c.contains("max_v"));
        CHECK(c.contains("k_i"));
        CHECK(c.contains("pass"));
    }

    CHECK(commands::simulate(cfg, "/nonexistent_dir/x.csv", std::nullopt).exit_code == 3);
    CHECK(commands::verify(cfg, "/nonexistent.csv").exit_code == 2);
    const std::string broken = write_temp("broken.csv", "t,x1\n0,1\n");
    CHECK(commands::verify(cfg, broken).exit_code == 2);
}

TEST_CASE("command layer: dwell") {
    const std::string cfg = write_temp("dwell.json", kNeuronDoc);
    const commands::Result r = commands::dwell(cfg);
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.output);
    CHECK(j["k"].get<double>() == Approx(0.2));
    REQUIRE(j["transitions"].size() == 2);
    for (const auto& t : j["transitions"]) {
        CHECK(t.contains("from"));
        CHECK(t.contains("to"));
        for (const char* key : {"k_i", "tau_theorem2", "tau_remark5", "tau_theorem4"})
            CHECK(t.contains(key));
        CHECK(t["tau_theorem2"].get<double>() == Approx(3.8365517703754855).epsilon(1e-13));
        // The ring bound is coarser here (|b| != |c|).
        CHECK(t["tau_theorem4"].get<double>() > t["tau_theorem2"].get<double>());
    }
}

TEST_CASE("command layer: oracle") {
    const std::string cfg = write_temp("oracle.json", kNeuronDoc);
    const commands::Result r = commands::oracle_run(cfg, 256, 3);
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.output);
    CHECK(j["ok"] == true);
    CHECK(j["samples"] == 256);
    CHECK(j["seed"] == 3);
    REQUIRE(j["modes"].size() == 2);
    REQUIRE(j["pairs"].size() == 2);
    for (const auto& p : j["pairs"]) CHECK(p["rel_err"].get<double>() <= 1e-5);

    CHECK(commands::oracle_run(cfg, 8, 3).exit_code == 2);
}

TEST_CASE("command layer: sweep") {
    const std::string doc = R"({
        "neuron": {"g_p": 0.75, "g_h": 0.15, "m": 1.0, "o_h": 0.35, "I": 1.0},
        "signal": {"periodic": {"T_I": 3.84, "T_0": 3.84, "periods": 1}},
        "v_th": 2.6,
        "sweep": {"T": [3.0, 3.84, 5.0], "k": [0.1, 0.2]}
    })";
    const std::string cfg = write_temp("sweep.json", doc);
    const commands::Result r = commands::sweep(cfg);
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.output);
    REQUIRE(j["rows"].size() == 6);
    for (const auto& row : j["rows"]) {
        for (const char* key : {"T", "k", "tau_d", "k_bar", "v_bound", "dwell_ok",
                                "nonspiking_ok"})
            CHECK(row.contains(key));
    }
    // T = 3.0 sits below every tau_d here; T = 5.0 above.
    CHECK(j["rows"][0]["dwell_ok"] == false);
    CHECK(j["rows"][4]["dwell_ok"] == true);

    // A sweep needs the grid block.
    const std::string no_grid = write_temp("sweep_none.json", kNeuronDoc);
    CHECK(commands::sweep(no_grid).exit_code == 2);
}
