#include "sympat/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sympat/rng.hpp"

namespace sympat {

namespace {

int window_begin_index(const Trajectory& traj, double window_fraction) {
    if (!(window_fraction > 0.0) || window_fraction > 1.0)
        throw std::invalid_argument("pattern metrics: window fraction must be in (0, 1]");
    const int samples = traj.sample_count();
    if (samples == 0) throw std::invalid_argument("pattern metrics: empty trajectory");
    return std::min(samples - 1,
                    static_cast<int>(std::floor((1.0 - window_fraction) * samples)));
}

Partition single_group(int node_count, int state_dim) {
    Partition p;
    p.assignment.assign(node_count, 0);
    p.group_symmetries = {identity_symmetry(state_dim)};
    return p;
}

double group_within_error(const Trajectory& traj, const std::vector<int>& members,
                          int state_dim, int begin) {
    double worst = 0.0;
    for (int s = begin; s < traj.sample_count(); ++s)
        for (std::size_t a = 0; a < members.size(); ++a)
            for (std::size_t b = a + 1; b < members.size(); ++b) {
                const double d = (traj.node_state(s, members[a], state_dim) -
                                  traj.node_state(s, members[b], state_dim))
                                     .cwiseAbs()
                                     .maxCoeff();
                worst = std::max(worst, d);
            }
    return worst;
}

// Upcrossing instants of one state component, linearly interpolated.
std::vector<double> upcrossings(const Trajectory& traj, int node, int state_index,
                                int state_dim, int begin) {
    std::vector<double> out;
    const int col = node * state_dim + state_index;
    for (int s = begin; s + 1 < traj.sample_count(); ++s) {
        const double va = traj.states(s, col);
        const double vb = traj.states(s + 1, col);
        if (va < 0.0 && vb >= 0.0) {
            const double ta = traj.times[s], tb = traj.times[s + 1];
            out.push_back(ta + (tb - ta) * (-va) / (vb - va));
        }
    }
    return out;
}

}  // namespace

double within_group_error(const Trajectory& traj, const Partition& p, double window_fraction) {
    const int begin = window_begin_index(traj, window_fraction);
    double worst = 0.0;
    for (const auto& members : p.groups())
        worst = std::max(worst, group_within_error(traj, members, p.state_dim(), begin));
    return worst;
}

double cross_group_error(const Trajectory& traj, const Partition& p, double window_fraction) {
    const int begin = window_begin_index(traj, window_fraction);
    const int n = p.state_dim();
    const auto groups = p.groups();
    double worst = 0.0;
    for (std::size_t h = 0; h < groups.size(); ++h)
        for (std::size_t k = h + 1; k < groups.size(); ++k) {
            const Eigen::MatrixXd& gh = p.group_symmetries[h].matrix;
            const Eigen::MatrixXd& gk = p.group_symmetries[k].matrix;
            for (int s = begin; s < traj.sample_count(); ++s)
                for (int i : groups[h])
                    for (int j : groups[k]) {
                        const double d = (gh * traj.node_state(s, i, n) -
                                          gk * traj.node_state(s, j, n))
                                             .cwiseAbs()
                                             .maxCoeff();
                        worst = std::max(worst, d);
                    }
        }
    return worst;
}

PatternReport evaluate_pattern(const Trajectory& traj, const Partition& p,
                               double window_fraction, double tol) {
    PatternReport report;
    report.tol = tol;
    report.window_begin = window_begin_index(traj, window_fraction);
    report.window_t_start = traj.times[report.window_begin];
    report.window_t_end = traj.times.back();
    const auto groups = p.groups();
    for (std::size_t g = 0; g < groups.size(); ++g) {
        GroupDetail detail;
        detail.group = static_cast<int>(g);
        detail.within_error =
            group_within_error(traj, groups[g], p.state_dim(), report.window_begin);
        report.within_error = std::max(report.within_error, detail.within_error);
        report.groups.push_back(detail);
    }
    report.cross_error = cross_group_error(traj, p, window_fraction);
    report.achieved = report.within_error <= tol && report.cross_error <= tol;
    return report;
}

HypothesisAudit audit_hypotheses(const Scenario& s, double window_fraction, double tol) {
    HypothesisAudit audit;

    audit.h1 = true;
    for (const auto& gamma : s.partition.group_symmetries) {
        EquivarianceReport r = check_equivariance(s.dynamics, gamma);
        audit.h1_residual = std::max(audit.h1_residual, r.max_residual);
        audit.h1 = audit.h1 && r.passed;
        if (s.dynamics.is_linear() && !check_commuting(s.dynamics.A(), gamma))
            audit.h1_commuting = false;
        audit.h1_reports.push_back(std::move(r));
    }
    audit.h1 = audit.h1 && audit.h1_commuting;

    const CouplingProtocol proto = synthesize_protocol(s.partition, s.topology);
    const auto& syms = s.partition.group_symmetries;
    for (int h = 0; h < proto.group_count(); ++h)
        for (int k = 0; k < proto.group_count(); ++k) {
            const Eigen::MatrixXd& t_hk = proto.group_transform(h, k);
            const double rebuilt =
                (t_hk - syms[h].matrix.transpose() * syms[k].matrix).cwiseAbs().maxCoeff();
            const double reciprocity =
                (t_hk - proto.group_transform(k, h).transpose()).cwiseAbs().maxCoeff();
            const double ortho =
                (t_hk.transpose() * t_hk -
                 Eigen::MatrixXd::Identity(t_hk.rows(), t_hk.cols()))
                    .cwiseAbs()
                    .maxCoeff();
            audit.h2_residual = std::max({audit.h2_residual, rebuilt, reciprocity, ortho});
        }
    audit.h2 = audit.h2_residual <= kTolOrtho;

    const Trajectory aux = simulate_scenario(s, /*aux=*/true);
    audit.h3_residual = within_group_error(
        aux, single_group(s.topology.node_count, s.dynamics.state_dim()), window_fraction);
    audit.h3 = audit.h3_residual <= tol;
    return audit;
}

DesignOutcome design_pipeline(const Scenario& s, bool force, double window_fraction,
                              double tol) {
    HypothesisAudit audit = audit_hypotheses(s, window_fraction, tol);
    if (!audit.h1 && !force)
        throw HypothesisError(
            "design: H1 equivariance failed (max residual " +
            std::to_string(audit.h1_residual) +
            "); the synthesized protocol carries no guarantee. Re-run with force to simulate anyway.");
    DesignOutcome outcome{synthesize_protocol(s.partition, s.topology), std::move(audit),
                          Trajectory{}, PatternReport{}, false};
    outcome.forced = force && !outcome.audit.overall();
    outcome.trajectory = simulate_scenario(s);
    outcome.report = evaluate_pattern(outcome.trajectory, s.partition, window_fraction, tol);
    return outcome;
}

double lemma1_residual(const NodeDynamics& dyn, const BlockDiagonalTransform& d,
                       int sample_count, double domain_radius, std::uint64_t seed) {
    const int n = d.state_dim();
    const int total = d.total_dim();
    if (n != dyn.state_dim())
        throw std::invalid_argument("lemma1: transform blocks do not match the dynamics");
    SampleRng rng(seed);
    const auto stacked_field = [&](double t, const Eigen::VectorXd& x) {
        Eigen::VectorXd out(total);
        for (int i = 0; i < d.node_count(); ++i)
            out.segment(i * n, n) = dyn.eval(t, x.segment(i * n, n));
        return out;
    };
    double worst = 0.0;
    Eigen::VectorXd x(total);
    for (int s = 0; s < sample_count; ++s) {
        const double t = rng.uniform(0.0, 10.0);
        for (int c = 0; c < total; ++c) x[c] = rng.uniform(-domain_radius, domain_radius);
        const double r = (apply_D(d, stacked_field(t, x)) - stacked_field(t, apply_D(d, x)))
                             .cwiseAbs()
                             .maxCoeff();
        worst = std::max(worst, r);
    }
    return worst;
}

std::vector<double> phase_lags_degrees(const Trajectory& traj, const Partition& p,
                                       double window_fraction) {
    const int begin = window_begin_index(traj, window_fraction);
    const auto groups = p.groups();
    const std::vector<double> ref =
        upcrossings(traj, groups[0].front(), 0, p.state_dim(), begin);
    if (ref.size() < 2)
        throw std::runtime_error(
            "phase lag: reference node shows fewer than two upcrossings in the window");
    double period = 0.0;
    for (std::size_t c = 1; c < ref.size(); ++c) period += ref[c] - ref[c - 1];
    period /= static_cast<double>(ref.size() - 1);

    std::vector<double> lags;
    for (const auto& members : groups) {
        const std::vector<double> cross =
            upcrossings(traj, members.front(), 0, p.state_dim(), begin);
        if (cross.empty())
            throw std::runtime_error("phase lag: a group shows no upcrossing in the window");
        double lag = std::fmod((cross.front() - ref.front()) / period * 360.0, 360.0);
        if (lag < 0.0) lag += 360.0;
        lags.push_back(lag);
    }
    return lags;
}

int count_zero_crossings(const Trajectory& traj, int node, int state_index, int state_dim,
                         double window_fraction) {
    const int begin = window_begin_index(traj, window_fraction);
    const int col = node * state_dim + state_index;
    int count = 0;
    for (int s = begin; s + 1 < traj.sample_count(); ++s)
        if (traj.states(s, col) * traj.states(s + 1, col) < 0.0) ++count;
    return count;
}

}  // namespace sympat
