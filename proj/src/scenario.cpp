#include "sympat/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "sympat/verify.hpp"

namespace sympat {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw std::invalid_argument("scenario: " + where + ": " + what);
}

const json& require(const json& j, const char* key, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
    return *it;
}

void reject_unknown_keys(const json& j, const std::set<std::string>& known,
                         const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!known.count(key)) fail(where, "unknown field '" + key + "'");
    }
}

double as_number(const json& j, const std::string& where) {
    if (!j.is_number()) fail(where, "expected a number");
    return j.get<double>();
}

long long as_integer(const json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where, "expected an integer");
    return j.get<long long>();
}

std::string as_string(const json& j, const std::string& where) {
    if (!j.is_string()) fail(where, "expected a string");
    return j.get<std::string>();
}

Eigen::MatrixXd as_matrix(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) fail(where, "expected a non-empty array of rows");
    const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    if (cols == 0) fail(where, "expected non-empty rows");
    Eigen::MatrixXd m(j.size(), cols);
    for (std::size_t r = 0; r < j.size(); ++r) {
        if (!j[r].is_array() || j[r].size() != cols) fail(where, "ragged rows");
        for (std::size_t c = 0; c < cols; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                as_number(j[r][c], where);
    }
    return m;
}

SymmetryElement parse_symmetry(const json& j, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    reject_unknown_keys(j, {"rotation2d", "matrix", "label"}, where);
    std::string label;
    if (j.contains("label")) label = as_string(j["label"], where + ".label");
    if (j.contains("rotation2d") == j.contains("matrix"))
        fail(where, "give exactly one of 'rotation2d' (degrees) or 'matrix'");
    if (j.contains("rotation2d")) {
        const double deg = as_number(j["rotation2d"], where + ".rotation2d");
        SymmetryElement s = make_rotation_2d(deg * std::numbers::pi / 180.0);
        if (!label.empty()) s.label = label;
        return s;
    }
    try {
        return make_symmetry(as_matrix(j["matrix"], where + ".matrix"), label);
    } catch (const std::invalid_argument& e) {
        fail(where + ".matrix", e.what());
    }
}

Topology parse_topology(const json& j) {
    const std::string where = "topology";
    reject_unknown_keys(j, {"nodes", "edges"}, where);
    const int nodes = static_cast<int>(as_integer(require(j, "nodes", where), where + ".nodes"));
    const json& ej = require(j, "edges", where);
    if (!ej.is_array()) fail(where + ".edges", "expected an array of [i, j] pairs");
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : ej) {
        if (!e.is_array() || e.size() != 2) fail(where + ".edges", "each edge is a [i, j] pair");
        edges.emplace_back(static_cast<int>(as_integer(e[0], where + ".edges")),
                           static_cast<int>(as_integer(e[1], where + ".edges")));
    }
    try {
        return build_topology(nodes, edges);
    } catch (const std::invalid_argument& e) {
        fail(where, e.what());
    }
}

std::map<std::string, double> parse_params(const json& j, const std::string& where) {
    std::map<std::string, double> params;
    if (!j.is_object()) fail(where, "expected an object of numbers");
    for (const auto& [key, value] : j.items())
        params[key] = as_number(value, where + "." + key);
    return params;
}

NodeDynamics parse_dynamics(const json& j) {
    const std::string where = "dynamics";
    reject_unknown_keys(j, {"name", "kind", "params", "A", "B", "K", "controller"}, where);
    const std::string name = as_string(require(j, "name", where), where + ".name");
    DynamicsKind kind = DynamicsKind::Continuous;
    if (j.contains("kind")) {
        const std::string k = as_string(j["kind"], where + ".kind");
        if (k == "discrete")
            kind = DynamicsKind::Discrete;
        else if (k != "continuous")
            fail(where + ".kind", "expected 'continuous' or 'discrete'");
    }
    std::map<std::string, double> params;
    if (j.contains("params")) params = parse_params(j["params"], where + ".params");

    NodeDynamics dyn;
    try {
        if (name == "lti") {
            if (kind == DynamicsKind::Discrete) fail(where + ".kind", "lti is continuous-time");
            dyn = NodeDynamics::lti(as_matrix(require(j, "A", where), where + ".A"),
                                    as_matrix(require(j, "B", where), where + ".B"),
                                    as_matrix(require(j, "K", where), where + ".K"));
        } else if (name == "integrator_chain" && j.contains("K")) {
            if (kind == DynamicsKind::Discrete)
                fail(where + ".kind", "integrator_chain is continuous-time");
            const int n = static_cast<int>(params.count("n") ? params.at("n") : 2.0);
            dyn = NodeDynamics::integrator_chain(n, as_matrix(j["K"], where + ".K"));
        } else {
            if (j.contains("A") || j.contains("B") || j.contains("K"))
                fail(where, "matrices A/B/K only apply to 'lti' or 'integrator_chain'");
            dyn = NodeDynamics::from_name(name, params, kind);
        }
        if (j.contains("controller")) {
            const json& cj = j["controller"];
            const std::string cwhere = where + ".controller";
            reject_unknown_keys(cj, {"name", "params"}, cwhere);
            std::map<std::string, double> cparams;
            if (cj.contains("params")) cparams = parse_params(cj["params"], cwhere + ".params");
            dyn = dyn.with_controller(
                make_control_law(as_string(require(cj, "name", cwhere), cwhere + ".name"),
                                 cparams));
        }
    } catch (const std::invalid_argument& e) {
        fail(where, e.what());
    }
    return dyn;
}

Partition parse_partition(const json& j, int node_count, int state_dim) {
    const std::string where = "partition";
    reject_unknown_keys(j, {"groups"}, where);
    const json& gj = require(j, "groups", where);
    if (!gj.is_array() || gj.empty()) fail(where + ".groups", "expected a non-empty array");
    std::vector<std::vector<int>> groups;
    std::vector<SymmetryElement> symmetries;
    for (std::size_t g = 0; g < gj.size(); ++g) {
        const std::string gwhere = where + ".groups[" + std::to_string(g) + "]";
        reject_unknown_keys(gj[g], {"nodes", "symmetry"}, gwhere);
        const json& nodes = require(gj[g], "nodes", gwhere);
        if (!nodes.is_array() || nodes.empty())
            fail(gwhere + ".nodes", "expected a non-empty array of 1-based labels");
        std::vector<int> members;
        for (const auto& n : nodes)
            members.push_back(static_cast<int>(as_integer(n, gwhere + ".nodes")));
        groups.push_back(std::move(members));
        symmetries.push_back(parse_symmetry(require(gj[g], "symmetry", gwhere),
                                            gwhere + ".symmetry"));
        if (symmetries.back().dim() != state_dim)
            fail(gwhere + ".symmetry", "dimension " + std::to_string(symmetries.back().dim()) +
                                           " does not match the node state dimension " +
                                           std::to_string(state_dim));
    }
    try {
        return build_multipartite_partition(node_count, groups, std::move(symmetries));
    } catch (const std::invalid_argument& e) {
        fail(where, e.what());
    }
}

InitialCondition parse_initial(const json& j, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    const std::string kind = as_string(require(j, "kind", where), where + ".kind");
    if (kind == "explicit") {
        reject_unknown_keys(j, {"kind", "values"}, where);
        const json& vj = require(j, "values", where);
        if (!vj.is_array() || vj.empty()) fail(where + ".values", "expected a non-empty array");
        Eigen::VectorXd v(vj.size());
        for (std::size_t c = 0; c < vj.size(); ++c)
            v[static_cast<Eigen::Index>(c)] = as_number(vj[c], where + ".values");
        return InitialCondition::explicit_vector(std::move(v));
    }
    // seeds are mandatory for random draws so runs regenerate exactly
    const auto seed =
        static_cast<std::uint64_t>(as_integer(require(j, "seed", where), where + ".seed"));
    if (kind == "normal") {
        reject_unknown_keys(j, {"kind", "seed"}, where);
        return InitialCondition::normal(seed);
    }
    if (kind == "uniform") {
        reject_unknown_keys(j, {"kind", "seed", "lo", "hi"}, where);
        const double lo = j.contains("lo") ? as_number(j["lo"], where + ".lo") : -1.0;
        const double hi = j.contains("hi") ? as_number(j["hi"], where + ".hi") : 1.0;
        if (!(lo < hi)) fail(where, "uniform range needs lo < hi");
        return InitialCondition::uniform(lo, hi, seed);
    }
    if (kind == "unit_circle") {
        reject_unknown_keys(j, {"kind", "seed"}, where);
        return InitialCondition::unit_circle(seed);
    }
    fail(where + ".kind", "expected 'explicit', 'normal', 'uniform', or 'unit_circle'");
}

SimConfig parse_sim(const json& j, DynamicsKind kind) {
    const std::string where = "sim";
    reject_unknown_keys(j, {"k", "t_end", "h", "record_every", "initial"}, where);
    SimConfig cfg;
    cfg.coupling_gain = as_number(require(j, "k", where), where + ".k");
    if (cfg.coupling_gain < 0.0) fail(where + ".k", "coupling gain must be >= 0");
    cfg.t_end = as_number(require(j, "t_end", where), where + ".t_end");
    if (!(cfg.t_end > 0.0)) fail(where + ".t_end", "must be positive");
    if (kind == DynamicsKind::Discrete) {
        cfg.step = 1.0;
        if (j.contains("h") && as_number(j["h"], where + ".h") != 1.0)
            fail(where + ".h", "discrete scenarios step one tick at a time");
        if (std::floor(cfg.t_end) != cfg.t_end)
            fail(where + ".t_end", "discrete t_end is a whole step count");
    } else {
        cfg.step = j.contains("h") ? as_number(j["h"], where + ".h") : 1e-3;
        if (!(cfg.step > 0.0)) fail(where + ".h", "must be positive");
        if (cfg.step > cfg.t_end) fail(where + ".h", "h must not exceed t_end");
    }
    if (j.contains("record_every")) {
        cfg.record_every = static_cast<int>(as_integer(j["record_every"], where + ".record_every"));
        if (cfg.record_every < 1) fail(where + ".record_every", "must be >= 1");
    }
    cfg.init = parse_initial(require(j, "initial", where), where + ".initial");
    return cfg;
}

json symmetry_to_json(const SymmetryElement& s) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < s.matrix.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < s.matrix.cols(); ++c) row.push_back(s.matrix(r, c));
        rows.push_back(std::move(row));
    }
    json out;
    out["matrix"] = std::move(rows);
    if (!s.label.empty()) out["label"] = s.label;
    return out;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t hash = 14695981039346656037ULL;
    for (const unsigned char c : data) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

Scenario parse_scenario_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        // e.byte is a 1-based offset into the text
        std::size_t line = 1;
        for (std::size_t c = 0; c + 1 < e.byte && c < text.size(); ++c)
            if (text[c] == '\n') ++line;
        throw std::invalid_argument("scenario: JSON parse error near line " +
                                    std::to_string(line) + ": " + e.what());
    }
    if (!j.is_object()) fail("top level", "expected an object");
    reject_unknown_keys(j, {"name", "description", "topology", "dynamics", "partition", "sim"},
                        "top level");
    Scenario s;
    s.name = as_string(require(j, "name", "top level"), "name");
    if (j.contains("description")) s.description = as_string(j["description"], "description");
    s.dynamics = parse_dynamics(require(j, "dynamics", "top level"));
    s.topology = parse_topology(require(j, "topology", "top level"));
    s.partition =
        parse_partition(require(j, "partition", "top level"), s.topology.node_count,
                        s.dynamics.state_dim());
    s.sim = parse_sim(require(j, "sim", "top level"), s.dynamics.kind());
    if (s.sim.init.kind == InitialCondition::Kind::Explicit &&
        s.sim.init.values.size() != s.topology.node_count * s.dynamics.state_dim())
        fail("sim.initial.values", "expected " +
                                       std::to_string(s.topology.node_count *
                                                      s.dynamics.state_dim()) +
                                       " entries (nodes x state dimension)");
    s.digest = fnv1a_hex(canonical_json(s));
    return s;
}

Scenario parse_scenario(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("scenario: cannot read '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_scenario_text(buf.str());
}

std::string canonical_json(const Scenario& s) {
    json j;
    j["name"] = s.name;
    j["description"] = s.description;

    json topo;
    topo["nodes"] = s.topology.node_count;
    json edges = json::array();
    for (const auto& [a, b] : s.topology.edges) edges.push_back({a + 1, b + 1});
    topo["edges"] = std::move(edges);
    j["topology"] = std::move(topo);

    json dyn;
    dyn["name"] = s.dynamics.name();
    dyn["kind"] = s.dynamics.kind() == DynamicsKind::Discrete ? "discrete" : "continuous";
    dyn["params"] = json::object();
    for (const auto& [key, value] : s.dynamics.params()) dyn["params"][key] = value;
    if (s.dynamics.uses_bk_coupling()) {
        if (s.dynamics.name() == "lti") {
            dyn["A"] = matrix_to_json(s.dynamics.A());
            dyn["B"] = matrix_to_json(s.dynamics.B());
        }
        dyn["K"] = matrix_to_json(s.dynamics.K());
    }
    if (s.dynamics.has_controller()) {
        json ctl;
        ctl["name"] = s.dynamics.controller().name;
        ctl["params"] = json::object();
        for (const auto& [key, value] : s.dynamics.controller().params)
            ctl["params"][key] = value;
        dyn["controller"] = std::move(ctl);
    }
    j["dynamics"] = std::move(dyn);

    json groups = json::array();
    for (const auto& members : s.partition.groups()) {
        const int g = s.partition.assignment[members.front()];
        json group;
        json nodes = json::array();
        for (int i : members) nodes.push_back(i + 1);
        group["nodes"] = std::move(nodes);
        group["symmetry"] = symmetry_to_json(s.partition.group_symmetries[g]);
        groups.push_back(std::move(group));
    }
    j["partition"] = json{{"groups", std::move(groups)}};

    json sim;
    sim["k"] = s.sim.coupling_gain;
    sim["t_end"] = s.sim.t_end;
    if (s.dynamics.kind() == DynamicsKind::Continuous) sim["h"] = s.sim.step;
    sim["record_every"] = s.sim.record_every;
    json init;
    switch (s.sim.init.kind) {
        case InitialCondition::Kind::Explicit: {
            init["kind"] = "explicit";
            json values = json::array();
            for (Eigen::Index c = 0; c < s.sim.init.values.size(); ++c)
                values.push_back(s.sim.init.values[c]);
            init["values"] = std::move(values);
            break;
        }
        case InitialCondition::Kind::Normal:
            init["kind"] = "normal";
            init["seed"] = s.sim.init.seed;
            break;
        case InitialCondition::Kind::Uniform:
            init["kind"] = "uniform";
            init["lo"] = s.sim.init.lo;
            init["hi"] = s.sim.init.hi;
            init["seed"] = s.sim.init.seed;
            break;
        case InitialCondition::Kind::UnitCircle:
            init["kind"] = "unit_circle";
            init["seed"] = s.sim.init.seed;
            break;
    }
    sim["initial"] = std::move(init);
    j["sim"] = std::move(sim);

    return j.dump(2);
}

Trajectory simulate_scenario(const Scenario& s, bool aux) {
    Trajectory traj;
    if (aux) {
        traj = simulate_auxiliary(s.dynamics, s.topology, s.sim);
    } else {
        const CouplingProtocol proto = synthesize_protocol(s.partition, s.topology);
        traj = simulate_pattern(s.dynamics, s.topology, proto, s.sim);
    }
    traj.scenario_digest = s.digest;
    return traj;
}

}  // namespace sympat
