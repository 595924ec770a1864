#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "tsfrac/commands.hpp"
#include "tsfrac/errors.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw tsfrac::SchemaError("--config", "cannot open '" + path + "'");
    std::ostringstream body;
    body << in.rdbuf();
    return body.str();
}

int config_error(const tsfrac::SchemaError& e) {
    std::cerr << "config error [" << e.field() << "]: " << e.what() << '\n';
    return tsfrac::exit_code::config_error;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fractional calculus on time scales: operator checks, embedding bounds, variational solver"};
    app.require_subcommand(1);

    std::string config, only, out, svg;
    double alpha = 0.0, p = 0.0, a = 0.0, b = 0.0;

    auto* verify = app.add_subcommand("verify", "Run the operator and inequality property suite");
    verify->add_option("--config", config, "JSON config (scale and h_max are used)");
    verify->add_option("--only", only, "Run a single property");

    auto* solve = app.add_subcommand("solve", "Find a nontrivial weak solution of the boundary value problem");
    solve->add_option("--config", config, "JSON config")->required();
    solve->add_option("--out", out, "CSV output (overrides \"out\")");
    solve->add_option("--svg", svg, "SVG plot (overrides \"svg\")");

    auto* bounds = app.add_subcommand("bounds", "Print the embedding constants and Hölder modulus");
    bounds->add_option("--alpha", alpha, "Order in (0, 1]")->required();
    bounds->add_option("--p", p, "Exponent > 1")->required();
    bounds->add_option("--b", b, "Right end of the scale")->required();
    bounds->add_option("--a", a, "Left end of the scale (default 0)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) {
            tsfrac::RunSpec spec;
            spec.command = tsfrac::Command::verify;
            if (!config.empty()) spec = tsfrac::parse_config(read_file(config), tsfrac::Command::verify);
            return tsfrac::run_verify(spec, only, std::cout, std::cerr);
        }
        if (solve->parsed()) {
            auto spec = tsfrac::parse_config(read_file(config), tsfrac::Command::solve);
            if (!out.empty()) spec.out = out;
            if (!svg.empty()) spec.svg = svg;
            return tsfrac::run_solve(spec, std::cout, std::cerr, std::filesystem::path(config).parent_path());
        }
        tsfrac::RunSpec spec;
        spec.command = tsfrac::Command::bounds;
        spec.alpha = alpha;
        spec.p = p;
        spec.scale.segments = {{a, b}};
        return tsfrac::run_bounds(spec, std::cout, std::cerr);
    } catch (const tsfrac::SchemaError& e) {
        return config_error(e);
    } catch (const tsfrac::Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return tsfrac::exit_code::numerical_failure;
    }
}
