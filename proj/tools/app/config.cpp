// SPDX-License-Identifier: Apache-2.0

#include "config.hpp"

#include "lincoh/errors.hpp"

#include <array>
#include <fstream>
#include <set>
#include <sstream>

namespace lincoh::app {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

/// Reads one JSON object, remembering which keys were consumed.
class Section {
public:
    Section(const json& node, std::string path) : node_(node), path_(std::move(path))
    {
        if (!node_.is_object()) {
            throw ConfigError(path_ + ": expected an object");
        }
    }

    template <class T>
    T get(const std::string& key, T fallback)
    {
        seen_.insert(key);
        const auto it = node_.find(key);
        if (it == node_.end()) {
            return fallback;
        }
        try {
            return it->template get<T>();
        } catch (const json::exception& e) {
            throw ConfigError(path_ + "." + key + ": " + e.what());
        }
    }

    const json* child(const std::string& key)
    {
        seen_.insert(key);
        const auto it = node_.find(key);
        return it == node_.end() ? nullptr : &*it;
    }

    std::string path(const std::string& key) const { return path_ + "." + key; }

    void finish() const
    {
        for (const auto& [key, value] : node_.items()) {
            if (!seen_.contains(key)) {
                throw ConfigError(path_ + ": unknown key '" + key + "'");
            }
        }
    }

private:
    const json& node_;
    std::string path_;
    std::set<std::string> seen_;
};

Placement parse_placement(const json& node, const std::string& path)
{
    if (node.is_string()) {
        if (node.get<std::string>() != "uniform") {
            throw ConfigError(path + ": placement must be \"uniform\" or {\"points\": [...]}");
        }
        return UnitSquarePlacement{};
    }
    Section s(node, path);
    const auto points = s.get<std::vector<std::array<double, 2>>>("points", {});
    s.finish();
    ExplicitPlacement p;
    for (const auto& xy : points) {
        p.points.push_back({xy[0], xy[1]});
    }
    return p;
}

CovarianceFamily parse_covariance(const json& node, const std::string& path)
{
    Section s(node, path);
    const auto kind = s.get<std::string>("kind", "exponential");
    const double sigma2 = s.get<double>("sigma2", 1.0);
    CovarianceFamily out;
    if (kind == "diagonal") {
        out = DiagonalCovariance{sigma2};
    } else if (kind == "equicorrelated") {
        out = EquicorrelatedCovariance{sigma2, s.get<double>("rho", 0.0)};
    } else if (kind == "exponential") {
        out = ExponentialCovariance{sigma2, s.get<double>("rho", 0.1)};
    } else {
        throw ConfigError(path + ".kind: unknown covariance family '" + kind + "'");
    }
    s.finish();
    return out;
}

ObservationGains parse_gains_h(const json& node, const std::string& path)
{
    Section s(node, path);
    const auto kind = s.get<std::string>("kind", "constant");
    ObservationGains out;
    if (kind == "constant") {
        out = ConstantGain{s.get<double>("value", 1.0)};
    } else if (kind == "explicit") {
        out = ExplicitGain{s.get<std::vector<double>>("values", {})};
    } else {
        throw ConfigError(path + ".kind: unknown observation gain mode '" + kind + "'");
    }
    s.finish();
    return out;
}

ChannelGains parse_gains_g(const json& node, const std::string& path)
{
    Section s(node, path);
    const auto kind = s.get<std::string>("kind", "uniform");
    ChannelGains out;
    if (kind == "uniform") {
        out = UniformGain{};
    } else if (kind == "constant") {
        out = ConstantGain{s.get<double>("value", 1.0)};
    } else if (kind == "explicit") {
        out = ExplicitGain{s.get<std::vector<double>>("values", {})};
    } else {
        throw ConfigError(path + ".kind: unknown channel gain mode '" + kind + "'");
    }
    s.finish();
    return out;
}

InstanceSpec parse_instance(const json& node)
{
    Section s(node, "instance");
    InstanceSpec spec = AppConfig::default_instance();
    spec.seed = s.get<std::uint64_t>("seed", spec.seed);
    spec.n_sensors = s.get<int>("n_sensors", spec.n_sensors);
    if (const json* p = s.child("placement")) {
        spec.placement = parse_placement(*p, s.path("placement"));
    }
    if (const json* c = s.child("covariance")) {
        spec.covariance = parse_covariance(*c, s.path("covariance"));
    }
    if (const json* h = s.child("gains_h")) {
        spec.gains_h = parse_gains_h(*h, s.path("gains_h"));
    }
    if (const json* g = s.child("gains_g")) {
        spec.gains_g = parse_gains_g(*g, s.path("gains_g"));
    }
    spec.eta2 = s.get<double>("eta2", spec.eta2);
    spec.xi2 = s.get<double>("xi2", spec.xi2);
    s.finish();
    if (spec.n_sensors < 1) {
        throw ConfigError("instance.n_sensors must be positive");
    }
    return spec;
}

TopologySpec parse_topology(const json& node)
{
    Section s(node, "topology");
    TopologySpec t;
    const auto kind = s.get<std::string>("kind", "cycle");
    if (kind == "distributed") {
        t.kind = TopologyKind::distributed;
    } else if (kind == "full") {
        t.kind = TopologyKind::full;
    } else if (kind == "cycle") {
        t.kind = TopologyKind::cycle;
    } else if (kind == "rgg") {
        t.kind = TopologyKind::rgg;
    } else if (kind == "explicit") {
        t.kind = TopologyKind::explicit_adjacency;
    } else {
        throw ConfigError("topology.kind: unknown topology '" + kind + "'");
    }
    t.k = s.get<int>("k", t.k);
    t.radius = s.get<double>("radius", t.radius);
    t.adjacency = s.get<std::vector<std::vector<int>>>("adjacency", {});
    s.finish();
    return t;
}

void parse_experiment(const json& node, AppConfig& cfg)
{
    Section s(node, "experiment");
    if (const json* t = s.child("tradeoff")) {
        Section e(*t, "experiment.tradeoff");
        auto& x = cfg.tradeoff;
        x.power_min = e.get<double>("power_min", x.power_min);
        x.power_max = e.get<double>("power_max", x.power_max);
        x.points = e.get<int>("points", x.points);
        e.finish();
        if (!(x.power_min > 0.0 && x.power_max >= x.power_min) || x.points < 1) {
            throw ConfigError("experiment.tradeoff: need 0 < power_min <= power_max and points >= 1");
        }
    }
    if (const json* p = s.child("power_savings")) {
        Section e(*p, "experiment.power_savings");
        auto& x = cfg.power_savings;
        x.n_sensors = e.get<int>("n_sensors", x.n_sensors);
        x.radii = e.get<std::vector<double>>("radii", x.radii);
        x.rhos = e.get<std::vector<double>>("rhos", x.rhos);
        x.eta2s = e.get<std::vector<double>>("eta2s", x.eta2s);
        x.sigma2 = e.get<double>("sigma2", x.sigma2);
        x.h = e.get<double>("h", x.h);
        x.xi2 = e.get<double>("xi2", x.xi2);
        x.seeds = e.get<int>("seeds", x.seeds);
        x.first_seed = e.get<std::uint64_t>("first_seed", x.first_seed);
        e.finish();
        if (x.n_sensors < 1 || x.seeds < 1 || x.radii.empty() || x.rhos.empty() || x.eta2s.empty()) {
            throw ConfigError("experiment.power_savings: grids must be nonempty and counts positive");
        }
    }
    if (const json* v = s.child("verify")) {
        Section e(*v, "experiment.verify");
        auto& x = cfg.verify;
        x.instances = e.get<int>("instances", x.instances);
        x.directions = e.get<int>("directions", x.directions);
        x.inject_fault = e.get<double>("inject_fault", x.inject_fault);
        e.finish();
        if (x.instances < 1 || x.directions < 1) {
            throw ConfigError("experiment.verify: counts must be positive");
        }
    }
    s.finish();
}

Tolerances parse_tolerances(const json& node)
{
    Section s(node, "tolerances");
    Tolerances t;
    t.solver.bracket_rel_width = s.get<double>("bracket_rel_width", t.solver.bracket_rel_width);
    t.solver.max_newton_steps = s.get<int>("max_newton_steps", t.solver.max_newton_steps);
    t.solver.max_bracket_doublings = s.get<int>("max_bracket_doublings", t.solver.max_bracket_doublings);
    t.kkt = s.get<double>("kkt", t.kkt);
    t.oracle_gap = s.get<double>("oracle_gap", t.oracle_gap);
    t.oracle_excess = s.get<double>("oracle_excess", t.oracle_excess);
    t.closed_form = s.get<double>("closed_form", t.closed_form);
    t.inverse = s.get<double>("inverse", t.inverse);
    t.bound_margin = s.get<double>("bound_margin", t.bound_margin);
    s.finish();
    return t;
}

OutputSettings parse_output(const json& node)
{
    Section s(node, "output");
    OutputSettings o;
    o.name = s.get<std::string>("name", o.name);
    o.format = parse_format(s.get<std::string>("format", to_string(o.format)));
    s.finish();
    return o;
}

json placement_json(const Placement& p)
{
    return std::visit(overloaded{
                          [](const UnitSquarePlacement&) { return json("uniform"); },
                          [](const ExplicitPlacement& e) {
                              json pts = json::array();
                              for (const Point& q : e.points) {
                                  pts.push_back({q.x, q.y});
                              }
                              return json{{"points", pts}};
                          },
                      },
                      p);
}

json covariance_json(const CovarianceFamily& c)
{
    return std::visit(
        overloaded{
            [](const DiagonalCovariance& d) { return json{{"kind", "diagonal"}, {"sigma2", d.sigma2}}; },
            [](const EquicorrelatedCovariance& e) {
                return json{{"kind", "equicorrelated"}, {"sigma2", e.sigma2}, {"rho", e.rho}};
            },
            [](const ExponentialCovariance& e) {
                return json{{"kind", "exponential"}, {"sigma2", e.sigma2}, {"rho", e.rho}};
            },
        },
        c);
}

template <class Variant>
json gains_json(const Variant& v)
{
    return std::visit(overloaded{
                          [](const UniformGain&) { return json{{"kind", "uniform"}}; },
                          [](const ConstantGain& c) { return json{{"kind", "constant"}, {"value", c.value}}; },
                          [](const ExplicitGain& e) { return json{{"kind", "explicit"}, {"values", e.values}}; },
                      },
                      v);
}

}  // namespace

InstanceSpec AppConfig::default_instance()
{
    InstanceSpec spec;
    spec.seed = 1;
    spec.n_sensors = 4;
    spec.covariance = ExponentialCovariance{1.0, 0.1};
    spec.gains_h = ConstantGain{1.0};
    spec.gains_g = UniformGain{};
    return spec;
}

Topology TopologySpec::build(int n_sensors, std::span<const Point> positions) const
{
    try {
        switch (kind) {
        case TopologyKind::distributed:
            return make_distributed(n_sensors);
        case TopologyKind::full:
            return make_fully_connected(n_sensors);
        case TopologyKind::cycle:
            return make_cycle(n_sensors, k);
        case TopologyKind::rgg:
            return make_rgg(radius, positions);
        case TopologyKind::explicit_adjacency: {
            if (adjacency.size() != static_cast<std::size_t>(n_sensors)) {
                throw ConfigError("topology.adjacency must have n_sensors rows");
            }
            Adjacency a(n_sensors, n_sensors);
            for (int i = 0; i < n_sensors; ++i) {
                const auto& row = adjacency[static_cast<std::size_t>(i)];
                if (row.size() != static_cast<std::size_t>(n_sensors)) {
                    throw ConfigError("topology.adjacency must be square");
                }
                for (int j = 0; j < n_sensors; ++j) {
                    if (row[static_cast<std::size_t>(j)] != 0 && row[static_cast<std::size_t>(j)] != 1) {
                        throw ConfigError("topology.adjacency entries must be 0 or 1");
                    }
                    a(i, j) = static_cast<std::uint8_t>(row[static_cast<std::size_t>(j)]);
                }
            }
            return Topology(std::move(a));
        }
        }
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("topology: ") + e.what());
    }
    throw ConfigError("topology: unsupported kind");
}

AppConfig parse_config(const json& doc)
{
    if (doc.is_null()) {
        return AppConfig{};
    }
    Section root(doc, "config");
    AppConfig cfg;
    if (const json* i = root.child("instance")) {
        cfg.instance = parse_instance(*i);
    }
    if (const json* t = root.child("topology")) {
        cfg.topology = parse_topology(*t);
    }
    if (const json* e = root.child("experiment")) {
        parse_experiment(*e, cfg);
    }
    if (const json* t = root.child("tolerances")) {
        cfg.tolerances = parse_tolerances(*t);
    }
    if (const json* o = root.child("output")) {
        cfg.output = parse_output(*o);
    }
    root.finish();
    return cfg;
}

AppConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_config(doc);
}

json to_json(const AppConfig& c)
{
    static constexpr const char* kinds[] = {"distributed", "full", "cycle", "rgg", "explicit"};
    const auto& i = c.instance;
    const auto& ps = c.power_savings;
    const auto& t = c.tolerances;
    return json{
        {"instance",
         {{"seed", i.seed},
          {"n_sensors", i.n_sensors},
          {"placement", placement_json(i.placement)},
          {"covariance", covariance_json(i.covariance)},
          {"gains_h", gains_json(i.gains_h)},
          {"gains_g", gains_json(i.gains_g)},
          {"eta2", i.eta2},
          {"xi2", i.xi2}}},
        {"topology",
         {{"kind", kinds[static_cast<int>(c.topology.kind)]},
          {"k", c.topology.k},
          {"radius", c.topology.radius},
          {"adjacency", c.topology.adjacency}}},
        {"experiment",
         {{"tradeoff",
           {{"power_min", c.tradeoff.power_min}, {"power_max", c.tradeoff.power_max}, {"points", c.tradeoff.points}}},
          {"power_savings",
           {{"n_sensors", ps.n_sensors},
            {"radii", ps.radii},
            {"rhos", ps.rhos},
            {"eta2s", ps.eta2s},
            {"sigma2", ps.sigma2},
            {"h", ps.h},
            {"xi2", ps.xi2},
            {"seeds", ps.seeds},
            {"first_seed", ps.first_seed}}},
          {"verify",
           {{"instances", c.verify.instances},
            {"directions", c.verify.directions},
            {"inject_fault", c.verify.inject_fault}}}}},
        {"tolerances",
         {{"bracket_rel_width", t.solver.bracket_rel_width},
          {"max_newton_steps", t.solver.max_newton_steps},
          {"max_bracket_doublings", t.solver.max_bracket_doublings},
          {"kkt", t.kkt},
          {"oracle_gap", t.oracle_gap},
          {"oracle_excess", t.oracle_excess},
          {"closed_form", t.closed_form},
          {"inverse", t.inverse},
          {"bound_margin", t.bound_margin}}},
        {"output", {{"name", c.output.name}, {"format", to_string(c.output.format)}}},
    };
}

std::string to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

OutputFormat parse_format(const std::string& s)
{
    if (s == "csv") {
        return OutputFormat::csv;
    }
    if (s == "json") {
        return OutputFormat::json;
    }
    throw ConfigError("unknown output format '" + s + "' (expected csv or json)");
}

}  // namespace lincoh::app
