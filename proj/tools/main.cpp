// switchcert command line tool.
//
// Thin shell over the shared library's command layer: parses arguments,
// forwards to the matching swc_cmd_* call, prints the JSON payload to stdout
// and diagnostics to stderr, and relays the command's exit code
// (0 pass, 1 analysis failure, 2 config/input error, 3 unwritable output).

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <string>

#include <CLI11.hpp>
#include <switchcert.h>

namespace {

int finish(swc_status status, int exit_code, char* output, char* diagnostic) {
    if (status != SWC_OK) {
        std::fprintf(stderr, "switchcert: %s\n", swc_last_error());
        return 2;
    }
    auto print = [](std::FILE* stream, const char* text) {
        if (!text || !*text) return;
        const size_t len = std::strlen(text);
        std::fwrite(text, 1, len, stream);
        if (text[len - 1] != '\n') std::fputc('\n', stream);
    };
    print(stdout, output);
    print(stderr, diagnostic);
    swc_string_free(output);
    swc_string_free(diagnostic);
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dwell-time certification and exact simulation for switched planar affine "
                 "systems"};
    app.require_subcommand(1);
    app.set_version_flag("--version", swc_version());

    std::string config, out_csv, out_svg, traj_csv;
    int samples = 4096;
    std::uint64_t seed = 0;
    bool seed_given = false;

    CLI::App* certify = app.add_subcommand("certify", "Evaluate the non-spiking certificate");
    certify->add_option("--config", config, "JSON config file")->required();

    CLI::App* simulate =
        app.add_subcommand("simulate", "Integrate the switched system and write a CSV");
    simulate->add_option("--config", config, "JSON config file")->required();
    simulate->add_option("--out", out_csv, "output trajectory CSV")->required();
    simulate->add_option("--svg", out_svg, "optional phase-portrait SVG");

    CLI::App* verify =
        app.add_subcommand("verify", "Check a trajectory CSV against the trapping region");
    verify->add_option("--config", config, "JSON config file")->required();
    verify->add_option("--traj", traj_csv, "trajectory CSV to check")->required();

    CLI::App* dwell = app.add_subcommand("dwell", "Tabulate per-transition dwell-time bounds");
    dwell->add_option("--config", config, "JSON config file")->required();

    CLI::App* oracle =
        app.add_subcommand("oracle", "Cross-check closed forms against brute-force sampling");
    oracle->add_option("--config", config, "JSON config file")->required();
    oracle->add_option("--samples", samples, "boundary samples per check")
        ->capture_default_str();
    oracle->add_option("--seed", seed, "RNG seed override");

    CLI::App* sweep = app.add_subcommand("sweep", "Certify every (T, k) grid combination");
    sweep->add_option("--config", config, "JSON config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    seed_given = oracle->count("--seed") > 0;

    int exit_code = 2;
    char* output = nullptr;
    char* diagnostic = nullptr;
    swc_status status = SWC_ERR_INTERNAL;

    if (certify->parsed()) {
        status = swc_cmd_certify(config.c_str(), &exit_code, &output, &diagnostic);
    } else if (simulate->parsed()) {
        status = swc_cmd_simulate(config.c_str(), out_csv.c_str(),
                                  out_svg.empty() ? nullptr : out_svg.c_str(), &exit_code,
                                  &output, &diagnostic);
    } else if (verify->parsed()) {
        status = swc_cmd_verify(config.c_str(), traj_csv.c_str(), &exit_code, &output,
                                &diagnostic);
    } else if (dwell->parsed()) {
        status = swc_cmd_dwell(config.c_str(), &exit_code, &output, &diagnostic);
    } else if (oracle->parsed()) {
        status = swc_cmd_oracle(config.c_str(), samples, seed_given ? 1 : 0, seed, &exit_code,
                                &output, &diagnostic);
    } else if (sweep->parsed()) {
        status = swc_cmd_sweep(config.c_str(), &exit_code, &output, &diagnostic);
    }

    return finish(status, exit_code, output, diagnostic);
}
