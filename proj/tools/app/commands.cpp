// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include "lincoh/closed_forms.hpp"
#include "lincoh/errors.hpp"
#include "lincoh/oracle.hpp"
#include "lincoh/solver.hpp"
#include "lincoh/version.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

namespace lincoh::app {

using nlohmann::json;

namespace {

std::vector<double> log_grid(double lo, double hi, int points)
{
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
        grid[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, t);
    }
    grid.back() = points == 1 ? lo : hi;
    return grid;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::string format_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Rethrows a library failure with a description of the row being computed.
[[noreturn]] void rethrow_with_context(const std::string& context)
{
    try {
        throw;
    } catch (const InvalidArgument& e) {
        throw RunError(context + ": " + e.what(), kExitConfig);
    } catch (const Error& e) {
        throw RunError(context + ": " + e.what(), kExitNumerical);
    }
}

std::string describe(const char* key, double value) { return std::string(key) + "=" + format_number(value); }

}  // namespace

std::size_t Table::column(const std::string& header) const
{
    const auto it = std::find(columns.begin(), columns.end(), header);
    if (it == columns.end()) {
        throw std::out_of_range("no column '" + header + "'");
    }
    return static_cast<std::size_t>(it - columns.begin());
}

CommandResult run_tradeoff(const AppConfig& config)
{
    const Instance inst = generate(config.instance);
    const ObservationModel& m = inst.observation;
    const ChannelModel& c = inst.channel;
    const Topology topo = config.topology.build(config.instance.n_sensors, inst.positions);
    const EmbeddedProblem ep = embed(topo, m, c);
    const double d0 = distortion_from_info(centralized_info(m), m.prior_var());

    Table t;
    t.columns = {"P", "P_xi", "J_opt", "D_opt", "J_plus", "D_minus", "J_low", "J_high", "J_rate_bound", "D_centralized"};
    for (double p : log_grid(config.tradeoff.power_min, config.tradeoff.power_max, config.tradeoff.points)) {
        try {
            const TradeoffPoint opt = solve_info_for_power(ep, m, c, p);
            const InfoBound bound = info_lower_bound_distortion(ep, m, c, p);
            const double low = snr_asymptotics(ep, m, c, p, SnrRegime::low).info;
            const double high = snr_asymptotics(ep, m, c, p, SnrRegime::high).info;
            t.rows.push_back({p, opt.snr, opt.info, opt.distortion, bound.info_upper, bound.distortion_lower, low, high,
                              rate_distortion_bound(m, c, p), d0});
        } catch (const Error&) {
            rethrow_with_context("tradeoff at " + describe("P", p));
        }
    }
    CommandResult result;
    result.tables.push_back(std::move(t));
    return result;
}

CommandResult run_power_savings(const AppConfig& config)
{
    const PowerSavingsExperiment& x = config.power_savings;
    Table per_seed;
    per_seed.columns = {"rho", "eta2", "radius", "seed", "links", "power_distributed", "power", "savings_pct"};

    for (int s = 0; s < x.seeds; ++s) {
        const std::uint64_t seed = x.first_seed + static_cast<std::uint64_t>(s);
        for (double rho : x.rhos) {
            for (double eta2 : x.eta2s) {
                const std::string where =
                    "power_savings at " + describe("rho", rho) + " " + describe("eta2", eta2) + " seed=" + std::to_string(seed);
                InstanceSpec spec;
                spec.seed = seed;
                spec.n_sensors = x.n_sensors;
                spec.covariance = ExponentialCovariance{x.sigma2, rho};
                spec.gains_h = ConstantGain{x.h};
                spec.gains_g = UniformGain{};
                spec.eta2 = eta2;
                spec.xi2 = x.xi2;

                std::optional<Instance> inst;
                double target = 0.0;
                double p0 = 0.0;
                try {
                    inst = generate(spec);
                    const double d0 = distortion_from_info(centralized_info(inst->observation), eta2);
                    target = 1.0 / (0.5 * (eta2 + d0)) - 1.0 / eta2;
                    const EmbeddedProblem ep0 = embed(make_distributed(x.n_sensors), inst->observation, inst->channel);
                    p0 = solve_power_for_info(ep0, inst->observation, inst->channel, target, config.tolerances.solver)
                             .power;
                } catch (const Error&) {
                    rethrow_with_context(where + " (distributed baseline)");
                }

                std::optional<Topology> last_topo;
                double last_power = 0.0;
                for (double r : x.radii) {
                    try {
                        Topology topo = make_rgg(r, inst->positions);
                        if (!last_topo || !(topo == *last_topo)) {
                            const EmbeddedProblem ep = embed(topo, inst->observation, inst->channel);
                            last_power =
                                solve_power_for_info(ep, inst->observation, inst->channel, target, config.tolerances.solver)
                                    .power;
                            last_topo = std::move(topo);
                        }
                        per_seed.rows.push_back({rho, eta2, r, static_cast<double>(seed),
                                                 static_cast<double>(last_topo->n_links()), p0, last_power,
                                                 100.0 * (p0 - last_power) / p0});
                    } catch (const Error&) {
                        rethrow_with_context(where + " " + describe("radius", r));
                    }
                }
            }
        }
    }

    // Summary over seeds for every (rho, eta2, radius), in grid order.
    Table summary;
    summary.name = "summary";
    summary.columns = {"rho", "eta2", "radius", "mean", "std", "min", "max", "n_seeds"};
    const std::size_t cell_count = x.rhos.size() * x.eta2s.size() * x.radii.size();
    std::vector<std::vector<double>> cells(cell_count);
    for (std::size_t i = 0; i < per_seed.rows.size(); ++i) {
        cells[i % cell_count].push_back(per_seed.rows[i][7]);
    }
    std::size_t cell = 0;
    for (double rho : x.rhos) {
        for (double eta2 : x.eta2s) {
            for (double r : x.radii) {
                const auto& v = cells[cell++];
                const double n = static_cast<double>(v.size());
                const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
                double ss = 0.0;
                for (double e : v) {
                    ss += (e - mean) * (e - mean);
                }
                const double sd = v.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
                const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
                summary.rows.push_back({rho, eta2, r, mean, sd, *lo, *hi, n});
            }
        }
    }

    CommandResult result;
    result.tables.push_back(std::move(per_seed));
    result.tables.push_back(std::move(summary));
    return result;
}

CommandResult run_verify(const AppConfig& config)
{
    const VerifyExperiment& x = config.verify;
    const Tolerances& tol = config.tolerances;
    static constexpr const char* kTopologyNames[] = {"distributed", "one_link", "cycle1", "full"};

    Table t;
    t.columns = {"instance",    "n_sensors",   "topology", "power",       "J_opt",       "oracle_gap", "oracle_excess",
                 "kkt",         "inverse_err", "weight_err", "bound_margin", "rate_margin", "pass"};
    CommandResult result;

    for (int i = 0; i < x.instances; ++i) {
        const int n = 2 + i % 3;
        const int topo_code = (i / 3) % 4;
        const double power = std::pow(10.0, static_cast<double>(i % 5) - 2.0);
        const std::uint64_t seed = config.instance.seed + static_cast<std::uint64_t>(i);
        const std::string where = "verify instance " + std::to_string(i);
        try {
            InstanceSpec spec = config.instance;
            spec.seed = seed;
            spec.n_sensors = n;
            spec.placement = UnitSquarePlacement{};
            spec.gains_g = UniformGain{};
            Rng rng(seed, Rng::Stream::test);
            std::vector<double> h(static_cast<std::size_t>(n));
            for (double& e : h) {
                e = 0.5 + rng.uniform();
            }
            spec.gains_h = ExplicitGain{h};
            const Instance inst = generate(spec);
            const ObservationModel& m = inst.observation;
            const ChannelModel& c = inst.channel;

            Topology topo = make_distributed(n);
            if (topo_code == 1) {
                Adjacency a = Adjacency::Identity(n, n);
                a(0, 1) = 1;
                topo = Topology(std::move(a));
            } else if (topo_code == 2) {
                topo = make_cycle(n, 1);
            } else if (topo_code == 3) {
                topo = make_fully_connected(n);
            }
            const EmbeddedProblem ep = embed(topo, m, c);

            TradeoffPoint opt = solve_info_for_power(ep, m, c, power);
            if (x.inject_fault != 0.0) {
                Vector bump = Vector::Zero(opt.weights.size());
                for (Eigen::Index k = 0; k < bump.size(); ++k) {
                    bump(k) = rng.uniform() - 0.5;
                }
                opt.weights += x.inject_fault * opt.weights.norm() / bump.norm() * bump;
            }

            oracle::SearchOptions so;
            so.n_directions = x.directions;
            so.seed = seed;
            const oracle::SearchResult found = oracle::sphere_search_max_info(ep, m, c, power, so);
            const double gap = (opt.info - found.info) / opt.info;
            const double excess = (found.info - opt.info) / opt.info;

            const double kkt = kkt_residual(opt, ep, m, c);
            const double inverse = rel_err(solve_power_for_info(ep, m, c, opt.info, tol.solver).power, power);
            const CollaborationMatrix w = lift(opt.weights, topo);
            const double weight_err = std::max(rel_err(fisher_info(w, m, c), opt.info), rel_err(transmit_power(w, m), power));
            const double bound_margin = (info_lower_bound_distortion(ep, m, c, power).info_upper - opt.info) / opt.info;
            const double rate_margin = (rate_distortion_bound(m, c, power) - opt.info) / opt.info;

            const bool pass = gap <= tol.oracle_gap && excess <= tol.oracle_excess && kkt <= tol.kkt &&
                              inverse <= tol.inverse && weight_err <= tol.closed_form && bound_margin >= -tol.bound_margin &&
                              rate_margin >= -tol.bound_margin;
            if (!pass) {
                result.passed = false;
                result.messages.push_back(where + " failed (" + kTopologyNames[topo_code] + ", N=" + std::to_string(n) +
                                          ", " + describe("P", power) + ")");
            }
            t.rows.push_back({static_cast<double>(i), static_cast<double>(n), static_cast<double>(topo_code), power,
                              opt.info, gap, excess, kkt, inverse, weight_err, bound_margin, rate_margin, pass ? 1.0 : 0.0});
        } catch (const Error&) {
            rethrow_with_context(where);
        }
    }
    result.tables.push_back(std::move(t));
    return result;
}

std::string render(const Table& table, OutputFormat format)
{
    std::ostringstream out;
    if (format == OutputFormat::csv) {
        for (std::size_t j = 0; j < table.columns.size(); ++j) {
            out << (j ? "," : "") << table.columns[j];
        }
        out << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t j = 0; j < row.size(); ++j) {
                out << (j ? "," : "") << format_number(row[j]);
            }
            out << '\n';
        }
        return out.str();
    }
    // Hand-rolled so numbers keep the same 17-digit text as the CSV output.
    out << "{\"columns\":" << json(table.columns).dump() << ",\"rows\":[";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        out << (i ? "," : "") << '[';
        for (std::size_t j = 0; j < table.rows[i].size(); ++j) {
            const double v = table.rows[i][j];
            out << (j ? "," : "") << (std::isfinite(v) ? format_number(v) : "null");
        }
        out << ']';
    }
    out << "]}\n";
    return out.str();
}

std::vector<std::filesystem::path> write_outputs(const std::filesystem::path& dir, const std::string& command,
                                                 const AppConfig& config, const CommandResult& result)
{
    std::filesystem::create_directories(dir);
    const std::string stem = config.output.name.empty() ? command : config.output.name;
    const std::string ext = config.output.format == OutputFormat::csv ? ".csv" : ".json";
    std::vector<std::filesystem::path> written;
    json files = json::array();
    for (const Table& t : result.tables) {
        const auto path = dir / (stem + (t.name.empty() ? "" : "_" + t.name) + ext);
        std::ofstream out(path, std::ios::binary);
        out << render(t, config.output.format);
        if (!out) {
            throw RunError("cannot write " + path.string(), kExitConfig);
        }
        files.push_back(path.filename().string());
        written.push_back(path);
    }
    const json meta{
        {"command", command},   {"version", kVersion},         {"rng", "lincoh-rng-v1"},
        {"seed", config.instance.seed}, {"passed", result.passed}, {"files", files},
        {"config", to_json(config)},
    };
    const auto meta_path = dir / (stem + ".meta.json");
    std::ofstream out(meta_path, std::ios::binary);
    out << meta.dump(2) << '\n';
    if (!out) {
        throw RunError("cannot write " + meta_path.string(), kExitConfig);
    }
    written.push_back(meta_path);
    return written;
}

}  // namespace lincoh::app
