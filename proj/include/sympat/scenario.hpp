#pragma once

#include <string>

#include "sympat/dynamics.hpp"
#include "sympat/graph.hpp"
#include "sympat/protocol.hpp"
#include "sympat/sim.hpp"

namespace sympat {

// A fully resolved simulation scenario. Node labels in files are 1-based;
// symmetries are row-major matrices or a rotation2d degree shorthand.
struct Scenario {
    std::string name;
    std::string description;
    Topology topology;
    NodeDynamics dynamics;  // controller already folded in
    Partition partition;
    SimConfig sim;
    std::string digest;  // FNV-1a of the canonical serialization
};

// Parses and validates a scenario file. Throws std::invalid_argument with
// field diagnostics on schema violations, dimension mismatches, or a
// disconnected topology.
Scenario parse_scenario(const std::string& path);
Scenario parse_scenario_text(const std::string& text);

// Canonical serialization: sorted keys, normalized node lists, shortest
// round-trip numbers. parse(canonical_json(s)) is a fixed point.
std::string canonical_json(const Scenario& s);

std::string fnv1a_hex(const std::string& data);

// Runs the scenario's pattern network (or its auxiliary network) and stamps
// the trajectory with the scenario digest.
Trajectory simulate_scenario(const Scenario& s, bool aux = false);

}  // namespace sympat
