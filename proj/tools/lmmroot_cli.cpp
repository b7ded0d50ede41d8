#include "harness/commands.hpp"

#include "lmmroot/error.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

using namespace lmmroot;
using namespace lmmroot::harness;

int main(int argc, char** argv) {
    CLI::App app{"LMM root-finder reference tables and benchmarks"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand

    RunConfig config;
    std::string format = "csv";
    std::string out_path;
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "markdown"}))
        ->capture_default_str();
    app.add_option("--out", out_path, "Write the table to this file instead of stdout");
    app.add_option("--seed", config.seed, "Seed for randomized property corpora")->capture_default_str();

    auto* rates = app.add_subcommand("rates", "Predicted convergence orders");
    rates->add_option("--smax", config.s_max, "Largest number of history points")->capture_default_str();
    rates->add_option("--dmax", config.d_max, "Largest number of derivatives")->capture_default_str();

    auto* bench = app.add_subcommand("bench", "Newton, s=2 and s=3 in extended precision");
    bench->add_option("--digits", config.digits, "Significant decimal digits")->capture_default_str();
    bench->add_option("--eta", config.eta, "Stop when the increment is at most 10^-eta")->capture_default_str();

    app.add_subcommand("pathology", "Iterate transcripts for tanh and cbrt(x) exp(-x^2)");

    auto* robust = app.add_subcommand("robust", "Bracketed solver on the reference brackets");
    std::string delta = "auto";
    robust->add_option("--delta", delta, "Relative bracket tolerance, or auto for 2 eps")->capture_default_str();
    robust->add_option("--random", config.random_polynomials, "Random polynomials in the property sweep")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitBadArguments;
    }

    config.format = format == "markdown" ? OutputFormat::markdown : OutputFormat::csv;
    if (!out_path.empty()) config.out = out_path;
    const std::map<CLI::App*, Command> commands = {
        {rates, Command::rates}, {bench, Command::bench}, {app.get_subcommand("pathology"), Command::pathology},
        {robust, Command::robust}};
    config.command = commands.at(app.get_subcommands().front());

    try {
        if (config.command == Command::robust && delta != "auto") {
            config.delta = parse_scalar<double>(delta);
        }
        config.validate();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadArguments;
    }

    CommandOutput result;
    try {
        result = dispatch(config);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSolverFailure;
    }

    if (config.out) {
        std::ofstream file(*config.out, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot write " << *config.out << '\n';
            return kExitBadArguments;
        }
        file << result.text;
    } else {
        std::cout << result.text;
    }
    for (const auto& line : result.diagnostics) std::cerr << line << '\n';
    return result.exit_code;
}
