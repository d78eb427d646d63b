// pathsum.cpp - command line entry point
//
// Exit codes: 0 success, 2 validation error, 3 resource budget exceeded,
// 4 numerical contract failure reported by `verify`, 1 anything else.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pathsum/config.hpp"
#include "pathsum/errors.hpp"
#include "pathsum/output.hpp"
#include "pathsum/runner.hpp"

namespace {

struct CliArgs {
    std::string config_path;
    std::string out_path;
    std::string format = "rows";
    int order = -1;     // -1: keep config value
    long long seed = -1;
};

int run_command(const std::string& command, const CliArgs& args) {
    pathsum::RunConfig cfg = args.config_path.empty()
                                 ? pathsum::parse_config("{}", command)
                                 : pathsum::parse_config_file(args.config_path, command);
    if (args.order >= 0) cfg.order = args.order;
    if (args.seed >= 0) cfg.seed = static_cast<std::uint64_t>(args.seed);

    const pathsum::ResultSet results = pathsum::run(cfg);
    pathsum::write_output(results, args.format, args.out_path);

    if (command == "verify" && !results.summary.at("all_passed").get<bool>()) {
        std::cerr << "verify: numerical contract failure\n";
        return 4;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"series solution of quantum dynamics for split Hamiltonians"};
    app.require_subcommand(1);

    CliArgs args;
    const std::vector<std::string> commands = {"coeffs",  "verify",  "propagate", "evolve",
                                               "density", "lattice", "ptcheck"};
    for (const std::string& name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", args.config_path, "configuration file (JSON)");
        sub->add_option("--out", args.out_path, "output file (default: stdout)");
        sub->add_option("--format", args.format, "rows | structured")
            ->check(CLI::IsMember({"rows", "structured"}));
        sub->add_option("--order", args.order, "series truncation order override");
        sub->add_option("--seed", args.seed, "seed override for randomized suites");
    }

    CLI11_PARSE(app, argc, argv);

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return run_command(command, args);
    } catch (const pathsum::validation_error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    } catch (const pathsum::budget_exceeded_error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 3;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
}
