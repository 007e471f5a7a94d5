// SPDX-License-Identifier: Apache-2.0

#ifndef LINCOH_APP_COMMANDS_HPP
#define LINCOH_APP_COMMANDS_HPP

#include "config.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace lincoh::app {

/// Failure raised while running a command, carrying the process exit code.
class RunError : public std::runtime_error {
public:
    RunError(const std::string& what, int exit_code) : std::runtime_error(what), exit_code_(exit_code) {}
    int exit_code() const noexcept { return exit_code_; }

private:
    int exit_code_;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    /// Index of a column by header; throws std::out_of_range if absent.
    std::size_t column(const std::string& header) const;
};

struct CommandResult {
    std::vector<Table> tables;
    /// False when a verification check failed.
    bool passed = true;
    std::vector<std::string> messages;
};

/// Optimal tradeoff of the configured topology over a log-spaced power grid.
CommandResult run_tradeoff(const AppConfig& config);

/// Power saved by random geometric graphs relative to the distributed network.
CommandResult run_power_savings(const AppConfig& config);

/// Cross-checks the solver against the oracle, KKT conditions, inverse and bounds.
CommandResult run_verify(const AppConfig& config);

/// CSV with a header row, or JSON {"columns": [...], "rows": [[...]]}. Numbers use 17 significant digits.
std::string render(const Table& table, OutputFormat format);

/// Writes every table as `<stem>[_suffix].<ext>` plus `<stem>.meta.json`. Returns the paths written.
std::vector<std::filesystem::path> write_outputs(const std::filesystem::path& dir, const std::string& command,
                                                 const AppConfig& config, const CommandResult& result);

}  // namespace lincoh::app

#endif  // LINCOH_APP_COMMANDS_HPP
