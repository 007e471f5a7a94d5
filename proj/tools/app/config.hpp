// SPDX-License-Identifier: Apache-2.0

#ifndef LINCOH_APP_CONFIG_HPP
#define LINCOH_APP_CONFIG_HPP

#include "lincoh/instances.hpp"
#include "lincoh/solver.hpp"
#include "lincoh/topology.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lincoh::app {

/// Malformed or inconsistent configuration (exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json };

enum class TopologyKind { distributed, full, cycle, rgg, explicit_adjacency };

struct TopologySpec {
    TopologyKind kind = TopologyKind::cycle;
    int k = 1;
    double radius = 0.3;
    std::vector<std::vector<int>> adjacency;

    /// Positions are only consulted for random geometric graphs.
    Topology build(int n_sensors, std::span<const Point> positions) const;
};

struct TradeoffExperiment {
    double power_min = 1e-3;
    double power_max = 1e3;
    int points = 25;
};

struct PowerSavingsExperiment {
    int n_sensors = 50;
    std::vector<double> radii = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.1, 1.2, 1.3, 1.4, 1.5};
    std::vector<double> rhos = {1e-3, 1e-7};
    std::vector<double> eta2s = {1.0, 2.0};
    double sigma2 = 0.5;
    double h = 1.0;
    double xi2 = 1.0;
    int seeds = 20;
    std::uint64_t first_seed = 1;
};

struct VerifyExperiment {
    int instances = 12;
    int directions = 20000;
    /// Relative perturbation added to solver weights before checking; nonzero values must fail.
    double inject_fault = 0.0;
};

struct Tolerances {
    SolverOptions solver;
    double kkt = 1e-7;
    double oracle_gap = 1e-3;
    double oracle_excess = 1e-8;
    double closed_form = 1e-9;
    double inverse = 1e-6;
    double bound_margin = 1e-10;
};

struct OutputSettings {
    std::string name;  ///< file stem; empty means the command name
    OutputFormat format = OutputFormat::csv;
};

struct AppConfig {
    InstanceSpec instance = default_instance();
    TopologySpec topology;
    TradeoffExperiment tradeoff;
    PowerSavingsExperiment power_savings;
    VerifyExperiment verify;
    Tolerances tolerances;
    OutputSettings output;

    static InstanceSpec default_instance();
};

/// Parse a config document. Every field is optional; unknown keys throw ConfigError.
AppConfig parse_config(const nlohmann::json& doc);
AppConfig load_config(const std::string& path);

/// Fully resolved config, including defaults, as JSON.
nlohmann::json to_json(const AppConfig& config);

std::string to_string(OutputFormat f);
OutputFormat parse_format(const std::string& s);

}  // namespace lincoh::app

#endif  // LINCOH_APP_CONFIG_HPP
