#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fyk/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "fyk - extension-problem identity checks, sharp constants and "
        "solvability certificates for the fractional Yamabe problem"};
    app.require_subcommand(1);

    fyk::RunConfig cfg;
    std::string format = "json";
    std::string gamma_grid_text;
    std::string n_grid_text;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--output", cfg.output_path, "output file (default stdout)");
        sub->add_option("--tol", cfg.tol, "pass tolerance")
            ->check(CLI::PositiveNumber);
        sub->add_option("--seed", cfg.seed, "seed for Monte-Carlo cross checks");
    };

    CLI::App* verify = app.add_subcommand(
        "verify-identities", "profile moment identities over a gamma grid");
    verify->add_option("--gamma-grid", gamma_grid_text, "lo:hi:step")
        ->default_str("0.1:0.9:0.1");
    verify->add_option("--n-grid", n_grid_text,
                       "lo:hi:step for the dimension recursion identity");
    add_common(verify);

    CLI::App* integrals = app.add_subcommand(
        "integrals", "extension integrals I1..I7 and H1..H3 against closed forms");
    integrals->add_option("--n", cfg.n, "dimension")->required();
    integrals->add_option("--gamma", cfg.gamma, "order in (0,1)")->required();
    add_common(integrals);

    CLI::App* scan = app.add_subcommand("theta-scan",
                                        "positivity sweep of theta(n,a)");
    scan->add_option("--n-min", cfg.n_min, "integer scan start");
    scan->add_option("--n-max", cfg.n_max, "integer scan end");
    scan->add_option("--gamma-grid", gamma_grid_text,
                     "gammas for the real-n sweep (lo:hi:step)");
    add_common(scan);

    CLI::App* constants =
        app.add_subcommand("constants", "sharp constants at (n, gamma)");
    constants->add_option("--n", cfg.n, "dimension")->required();
    constants->add_option("--gamma", cfg.gamma, "order in (0,1)")->required();
    add_common(constants);

    CLI::App* fourier = app.add_subcommand(
        "fourier-check", "bubble transform against the K-Bessel closed form");
    fourier->add_option("--n", cfg.n, "dimension")->required();
    fourier->add_option("--gamma", cfg.gamma, "order in (0,1)")->required();
    fourier->add_option("--zeta-min", cfg.zeta_min, "grid start");
    fourier->add_option("--zeta-max", cfg.zeta_max, "grid end");
    fourier->add_option("--zeta-count", cfg.zeta_count, "grid size");
    add_common(fourier);

    CLI::App* geometry = app.add_subcommand(
        "geometry-check", "normal-form identities on the hyperbolic models");
    add_common(geometry);

    CLI::App* minimize =
        app.add_subcommand("minimize", "trace-Sobolev quotient minimization");
    minimize->add_option("--n", cfg.n, "dimension")->required();
    minimize->add_option("--gamma", cfg.gamma, "order in (0,1)")->required();
    minimize->add_option("--betas", cfg.betas,
                         "basis exponents (default bubble, +1, +2)");
    add_common(minimize);

    CLI::App* certify = app.add_subcommand(
        "certify", "solvability certificate from curvature data");
    certify->add_option("--n", cfg.n, "dimension")->required();
    certify->add_option("--gamma", cfg.gamma, "order in (0,1)")->required();
    certify->add_option("--input", cfg.input_path, "curvature JSON file")
        ->required();
    add_common(certify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : fyk::kExitUsage;
    }

    cfg.format = format == "csv" ? fyk::OutputFormat::Csv
                                 : fyk::OutputFormat::Json;
    try {
        if (verify->parsed()) {
            cfg.command = "verify-identities";
            cfg.gamma_grid = fyk::parse_grid(
                gamma_grid_text.empty() ? "0.1:0.9:0.1" : gamma_grid_text);
            if (!n_grid_text.empty()) cfg.n_grid = fyk::parse_grid(n_grid_text);
        } else if (integrals->parsed()) {
            cfg.command = "integrals";
        } else if (scan->parsed()) {
            cfg.command = "theta-scan";
            if (!gamma_grid_text.empty())
                cfg.gamma_grid = fyk::parse_grid(gamma_grid_text);
        } else if (constants->parsed()) {
            cfg.command = "constants";
        } else if (fourier->parsed()) {
            cfg.command = "fourier-check";
        } else if (geometry->parsed()) {
            cfg.command = "geometry-check";
        } else if (minimize->parsed()) {
            cfg.command = "minimize";
        } else if (certify->parsed()) {
            cfg.command = "certify";
        }
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return fyk::kExitUsage;
    }

    const fyk::CommandResult result = fyk::run_command(cfg);
    if (cfg.output_path.empty()) std::cout << result.payload(cfg.format);
    return result.exit_code;
}
