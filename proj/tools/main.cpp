#include <unistd.h>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sympat/scenario.hpp"
#include "sympat/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void atomic_write(const std::string& path, const std::string& content) {
    const fs::path target = fs::absolute(path);
    fs::path tmp = target;
    tmp += ".tmp" + std::to_string(static_cast<unsigned>(::getpid()));
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        f << content;
        if (!f.flush()) throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

int thread_cap() {
    if (const char* env = std::getenv("SYMPAT_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

json matrix_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

json audit_json(const sympat::HypothesisAudit& a) {
    json per = json::array();
    for (const auto& r : a.h1_reports)
        per.push_back({{"passed", r.passed},
                       {"max_residual", r.max_residual},
                       {"samples", r.samples_tested}});
    return json{{"h1",
                 {{"passed", a.h1},
                  {"max_residual", a.h1_residual},
                  {"commuting", a.h1_commuting},
                  {"per_symmetry", std::move(per)}}},
                {"h2", {{"passed", a.h2}, {"residual", a.h2_residual}}},
                {"h3", {{"passed", a.h3}, {"sync_error", a.h3_residual}}},
                {"overall", a.overall()}};
}

json report_json(const sympat::PatternReport& r) {
    json groups = json::array();
    for (const auto& g : r.groups)
        groups.push_back({{"group", g.group + 1}, {"within_error", g.within_error}});
    return json{{"achieved", r.achieved},
                {"within_group_error", r.within_error},
                {"cross_group_error", r.cross_error},
                {"tol", r.tol},
                {"window", {{"t_start", r.window_t_start}, {"t_end", r.window_t_end}}},
                {"groups", std::move(groups)}};
}

json protocol_json(const sympat::Scenario& s, const sympat::CouplingProtocol& proto) {
    json transforms = json::array();
    for (const auto& [i, j] : proto.edges()) {
        transforms.push_back(
            {{"i", i + 1}, {"j", j + 1}, {"matrix", matrix_json(proto.transform(i, j))}});
        transforms.push_back(
            {{"i", j + 1}, {"j", i + 1}, {"matrix", matrix_json(proto.transform(j, i))}});
    }
    return json{{"scenario", s.name},
                {"scenario_digest", s.digest},
                {"node_count", proto.node_count()},
                {"state_dim", proto.state_dim()},
                {"transforms", std::move(transforms)}};
}

void print_audit(const sympat::HypothesisAudit& a) {
    std::printf("H1 equivariance:      %s (max residual %.3g%s)\n", a.h1 ? "pass" : "FAIL",
                a.h1_residual, a.h1_commuting ? "" : ", commutation fails");
    std::printf("H2 protocol table:    %s (residual %.3g)\n", a.h2 ? "pass" : "FAIL",
                a.h2_residual);
    std::printf("H3 auxiliary sync:    %s (sync error %.3g)\n", a.h3 ? "pass" : "FAIL",
                a.h3_residual);
}

void print_report(const sympat::PatternReport& r) {
    std::printf("pattern:              %s (tol %g, window t in [%g, %g])\n",
                r.achieved ? "achieved" : "NOT achieved", r.tol, r.window_t_start,
                r.window_t_end);
    std::printf("  within-group error: %.6g\n", r.within_error);
    std::printf("  cross-group error:  %.6g\n", r.cross_error);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"synthesize and verify coupling protocols for patterned synchronization"};
    app.require_subcommand(1);

    std::string scenario_path, out_path, report_path, param = "k";
    bool force = false, aux = false, as_json = false;
    double window = sympat::kDefaultWindowFraction;
    double tol = sympat::kPatternTol;
    double from = 0.0, to = 1.0;
    int steps = 10;

    const auto add_common = [&](CLI::App* cmd, bool with_tuning) {
        cmd->add_option("scenario", scenario_path, "scenario JSON file")->required();
        if (with_tuning) {
            cmd->add_option("--window", window, "trailing window fraction (default 0.2)");
            cmd->add_option("--pattern-tol", tol, "pattern tolerance (default 1e-3)");
            cmd->add_flag("--json", as_json, "print the report as JSON");
        }
    };

    CLI::App* check = app.add_subcommand("check", "audit hypotheses H1-H3");
    add_common(check, true);

    CLI::App* design = app.add_subcommand("design", "synthesize the coupling protocol");
    add_common(design, true);
    design->add_option("--out", out_path, "protocol JSON output path")->required();
    design->add_flag("--force", force, "emit the protocol even if H1 fails");

    CLI::App* simulate = app.add_subcommand("simulate", "integrate and export a trajectory");
    add_common(simulate, false);
    simulate->add_option("--out", out_path, "trajectory CSV output path")->required();
    simulate->add_flag("--aux", aux, "simulate the auxiliary network instead");

    CLI::App* verify = app.add_subcommand("verify", "full pipeline: audit, simulate, score");
    add_common(verify, true);
    verify->add_option("--out", report_path, "also write the JSON report here");
    verify->add_flag("--force", force, "simulate even if H1 fails");

    CLI::App* sweep = app.add_subcommand("sweep", "scan a parameter and score each run");
    add_common(sweep, true);
    sweep->add_option("--param", param, "swept parameter (only 'k')");
    sweep->add_option("--from", from, "first value")->required();
    sweep->add_option("--to", to, "last value")->required();
    sweep->add_option("--steps", steps, "number of sample points");
    sweep->add_option("--out", out_path, "sweep CSV output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const sympat::Scenario s = sympat::parse_scenario(scenario_path);

        if (*check) {
            const sympat::HypothesisAudit audit = sympat::audit_hypotheses(s, window, tol);
            if (as_json) {
                json out = {{"scenario", s.name},
                            {"digest", s.digest},
                            {"audit", audit_json(audit)}};
                std::printf("%s\n", out.dump(2).c_str());
            } else {
                std::printf("scenario %s (digest %s)\n", s.name.c_str(), s.digest.c_str());
                print_audit(audit);
            }
            return audit.overall() ? 0 : 2;
        }

        if (*design) {
            const sympat::DesignOutcome outcome = sympat::design_pipeline(s, force, window, tol);
            atomic_write(out_path, protocol_json(s, outcome.protocol).dump(2) + "\n");
            if (as_json) {
                json out = {{"scenario", s.name},
                            {"digest", s.digest},
                            {"audit", audit_json(outcome.audit)},
                            {"pattern", report_json(outcome.report)},
                            {"protocol_path", out_path},
                            {"forced", outcome.forced}};
                std::printf("%s\n", out.dump(2).c_str());
            } else {
                std::printf("scenario %s (digest %s)\n", s.name.c_str(), s.digest.c_str());
                print_audit(outcome.audit);
                print_report(outcome.report);
                std::printf("protocol written to %s%s\n", out_path.c_str(),
                            outcome.forced ? " (forced: hypotheses do not all hold)" : "");
            }
            return 0;
        }

        if (*simulate) {
            const sympat::Trajectory traj = sympat::simulate_scenario(s, aux);
            atomic_write(out_path, sympat::trajectory_csv(traj, s.dynamics.state_dim()));
            std::printf("%s trajectory: %d samples -> %s\n", aux ? "auxiliary" : "pattern",
                        traj.sample_count(), out_path.c_str());
            return 0;
        }

        if (*verify) {
            const sympat::DesignOutcome outcome = sympat::design_pipeline(s, force, window, tol);
            const json out = {{"scenario", s.name},
                              {"digest", s.digest},
                              {"audit", audit_json(outcome.audit)},
                              {"pattern", report_json(outcome.report)},
                              {"forced", outcome.forced}};
            if (!report_path.empty()) atomic_write(report_path, out.dump(2) + "\n");
            if (as_json) {
                std::printf("%s\n", out.dump(2).c_str());
            } else {
                std::printf("scenario %s (digest %s)\n", s.name.c_str(), s.digest.c_str());
                print_audit(outcome.audit);
                print_report(outcome.report);
            }
            return outcome.report.achieved ? 0 : 2;
        }

        if (*sweep) {
            if (param != "k")
                throw std::invalid_argument("sweep: only --param k is supported");
            if (steps < 1) throw std::invalid_argument("sweep: steps must be >= 1");
            std::vector<double> ks(steps);
            for (int i = 0; i < steps; ++i)
                ks[i] = steps == 1 ? from : from + (to - from) * i / (steps - 1);

            struct Row {
                double within = 0.0, cross = 0.0;
                bool achieved = false;
                std::string error;
            };
            std::vector<Row> rows(steps);
            std::atomic<int> cursor{0};
            const int workers = std::min(thread_cap(), steps);
            const auto run = [&]() {
                for (int i; (i = cursor.fetch_add(1)) < steps;) {
                    try {
                        sympat::Scenario sk = s;
                        sk.sim.coupling_gain = ks[i];
                        const sympat::Trajectory traj = sympat::simulate_scenario(sk);
                        const sympat::PatternReport r =
                            sympat::evaluate_pattern(traj, sk.partition, window, tol);
                        rows[i] = {r.within_error, r.cross_error, r.achieved, ""};
                    } catch (const std::exception& e) {
                        rows[i].error = e.what();
                    }
                }
            };
            std::vector<std::thread> pool;
            for (int w = 1; w < workers; ++w) pool.emplace_back(run);
            run();
            for (auto& t : pool) t.join();

            std::string csv = "k,within_group_error,cross_group_error,achieved\n";
            char buf[96];
            for (int i = 0; i < steps; ++i) {
                if (!rows[i].error.empty())
                    throw std::runtime_error("sweep at k=" + std::to_string(ks[i]) + ": " +
                                             rows[i].error);
                std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%d\n", ks[i],
                              rows[i].within, rows[i].cross, rows[i].achieved ? 1 : 0);
                csv += buf;
            }
            atomic_write(out_path, csv);
            std::printf("sweep: %d runs -> %s\n", steps, out_path.c_str());
            return 0;
        }
    } catch (const sympat::HypothesisError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
