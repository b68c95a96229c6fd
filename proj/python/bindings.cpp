#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sympat/scenario.hpp"
#include "sympat/verify.hpp"

namespace py = pybind11;
using namespace sympat;

namespace {

py::dict audit_dict(const HypothesisAudit& a) {
    py::list per;
    for (const auto& r : a.h1_reports) {
        py::dict d;
        d["passed"] = r.passed;
        d["max_residual"] = r.max_residual;
        d["samples"] = r.samples_tested;
        per.append(std::move(d));
    }
    py::dict out;
    out["h1"] = a.h1;
    out["h1_residual"] = a.h1_residual;
    out["h1_commuting"] = a.h1_commuting;
    out["h1_per_symmetry"] = std::move(per);
    out["h2"] = a.h2;
    out["h2_residual"] = a.h2_residual;
    out["h3"] = a.h3;
    out["h3_residual"] = a.h3_residual;
    out["overall"] = a.overall();
    return out;
}

py::dict report_dict(const PatternReport& r) {
    py::dict out;
    out["achieved"] = r.achieved;
    out["within_group_error"] = r.within_error;
    out["cross_group_error"] = r.cross_error;
    out["tol"] = r.tol;
    out["window_t_start"] = r.window_t_start;
    out["window_t_end"] = r.window_t_end;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "coupling-protocol synthesis and pattern verification";

    py::class_<Scenario>(m, "Scenario")
        .def_readonly("name", &Scenario::name)
        .def_readonly("description", &Scenario::description)
        .def_readonly("digest", &Scenario::digest)
        .def_property_readonly("node_count",
                               [](const Scenario& s) { return s.topology.node_count; })
        .def_property_readonly("state_dim",
                               [](const Scenario& s) { return s.dynamics.state_dim(); })
        .def_property_readonly("group_count",
                               [](const Scenario& s) { return s.partition.group_count(); })
        .def_property_readonly("coupling_gain",
                               [](const Scenario& s) { return s.sim.coupling_gain; })
        .def("canonical_json", &canonical_json)
        .def("__repr__", [](const Scenario& s) {
            return "<Scenario '" + s.name + "' digest " + s.digest + ">";
        });

    m.def("parse_scenario", &parse_scenario, py::arg("path"),
          "Load and validate a scenario JSON file.");
    m.def("parse_scenario_text", &parse_scenario_text, py::arg("text"));

    m.def(
        "simulate",
        [](const Scenario& s, bool aux) {
            const Trajectory traj = simulate_scenario(s, aux);
            Eigen::VectorXd times(traj.sample_count());
            for (int i = 0; i < traj.sample_count(); ++i) times[i] = traj.times[i];
            return py::make_tuple(times, traj.states);
        },
        py::arg("scenario"), py::arg("aux") = false,
        "Run the pattern network (or the auxiliary network); returns (times, states) "
        "with one row per sample, node-major columns.");

    m.def(
        "audit",
        [](const Scenario& s, double window, double tol) {
            return audit_dict(audit_hypotheses(s, window, tol));
        },
        py::arg("scenario"), py::arg("window") = kDefaultWindowFraction,
        py::arg("tol") = kPatternTol, "Audit hypotheses H1-H3.");

    m.def(
        "verify",
        [](const Scenario& s, bool force, double window, double tol) {
            const DesignOutcome outcome = design_pipeline(s, force, window, tol);
            py::dict out;
            out["audit"] = audit_dict(outcome.audit);
            out["pattern"] = report_dict(outcome.report);
            out["achieved"] = outcome.report.achieved;
            out["forced"] = outcome.forced;
            return out;
        },
        py::arg("scenario"), py::arg("force") = false,
        py::arg("window") = kDefaultWindowFraction, py::arg("tol") = kPatternTol,
        "Full pipeline: audit, simulate, score. Raises ValueError on H1 failure "
        "unless force is set.");

    m.def(
        "protocol_table",
        [](const Scenario& s) {
            const CouplingProtocol proto = synthesize_protocol(s.partition, s.topology);
            py::list rows;
            for (const auto& [i, j] : proto.edges()) {
                rows.append(py::make_tuple(i + 1, j + 1, proto.transform(i, j)));
                rows.append(py::make_tuple(j + 1, i + 1, proto.transform(j, i)));
            }
            return rows;
        },
        py::arg("scenario"),
        "Edge-to-transform table as (i, j, matrix) tuples, 1-based, both directions.");

    py::register_exception<HypothesisError>(m, "HypothesisError", PyExc_ValueError);
}
