// SPDX-License-Identifier: Apache-2.0

#include "app/commands.hpp"
#include "app/config.hpp"

#include "lincoh/errors.hpp"
#include "lincoh/version.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

namespace {

using namespace lincoh::app;

struct Options {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::string format;
    bool quiet = false;
};

int run(const std::string& command, const Options& opts)
{
    AppConfig config = opts.config_path.empty() ? AppConfig{} : load_config(opts.config_path);
    if (opts.seed) {
        config.instance.seed = *opts.seed;
        config.power_savings.first_seed = *opts.seed;
    }
    if (!opts.format.empty()) {
        config.output.format = parse_format(opts.format);
    }

    CommandResult result;
    if (command == "tradeoff") {
        result = run_tradeoff(config);
    } else if (command == "power-savings") {
        result = run_power_savings(config);
    } else {
        result = run_verify(config);
    }

    if (!opts.out_dir.empty()) {
        const std::string stem = command == "power-savings" ? "power_savings" : command;
        for (const auto& path : write_outputs(opts.out_dir, stem, config, result)) {
            if (!opts.quiet) {
                std::cerr << "wrote " << path.string() << '\n';
            }
        }
    } else if (!opts.quiet) {
        for (const Table& t : result.tables) {
            std::cout << render(t, config.output.format);
        }
    }
    for (const auto& msg : result.messages) {
        std::cerr << msg << '\n';
    }
    if (!result.passed) {
        std::cerr << command << ": verification failed\n";
        return kExitNumerical;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Optimal linear coherent estimation in sensor networks"};
    app.set_version_flag("--version", lincoh::kVersion);
    app.require_subcommand(1);

    Options opts;
    std::string command;
    for (const char* name : {"tradeoff", "power-savings", "verify"}) {
        const char* help = std::string(name) == "tradeoff"
                               ? "Optimal information and bounds over a power grid"
                               : std::string(name) == "power-savings" ? "Power saved by collaboration on random geometric graphs"
                                                                      : "Cross-check the solver against the oracle and bounds";
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", opts.config_path, "JSON config file")->check(CLI::ExistingFile);
        sub->add_option("--out", opts.out_dir, "Output directory; tables go to stdout when omitted");
        sub->add_option("--seed", opts.seed, "Override the instance seed");
        sub->add_option("--format", opts.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_flag("--quiet", opts.quiet, "Suppress progress and table output");
        sub->callback([&command, name] { command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        return run(command, opts);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const RunError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const lincoh::InvalidArgument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitConfig;
    } catch (const lincoh::Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
