#include "sympat/sim.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <utility>

#include "sympat/rng.hpp"

namespace sympat {

InitialCondition InitialCondition::explicit_vector(Eigen::VectorXd v) {
    InitialCondition ic;
    ic.kind = Kind::Explicit;
    ic.values = std::move(v);
    return ic;
}

InitialCondition InitialCondition::normal(std::uint64_t seed) {
    InitialCondition ic;
    ic.kind = Kind::Normal;
    ic.seed = seed;
    return ic;
}

InitialCondition InitialCondition::uniform(double lo, double hi, std::uint64_t seed) {
    InitialCondition ic;
    ic.kind = Kind::Uniform;
    ic.lo = lo;
    ic.hi = hi;
    ic.seed = seed;
    return ic;
}

InitialCondition InitialCondition::unit_circle(std::uint64_t seed) {
    InitialCondition ic;
    ic.kind = Kind::UnitCircle;
    ic.seed = seed;
    return ic;
}

Eigen::VectorXd materialize(const InitialCondition& ic, int node_count, int state_dim) {
    const int total = node_count * state_dim;
    if (ic.kind == InitialCondition::Kind::Explicit) {
        if (static_cast<int>(ic.values.size()) != total)
            throw std::invalid_argument("initial state: expected " + std::to_string(total) +
                                        " values, got " + std::to_string(ic.values.size()));
        return ic.values;
    }
    SampleRng rng(ic.seed);
    Eigen::VectorXd x(total);
    switch (ic.kind) {
        case InitialCondition::Kind::Normal:
            for (int c = 0; c < total; ++c) x[c] = rng.normal();
            break;
        case InitialCondition::Kind::Uniform:
            if (!(ic.lo < ic.hi))
                throw std::invalid_argument("initial state: uniform range is empty");
            for (int c = 0; c < total; ++c) x[c] = rng.uniform(ic.lo, ic.hi);
            break;
        case InitialCondition::Kind::UnitCircle: {
            if (state_dim != 2)
                throw std::invalid_argument("initial state: unit_circle needs planar nodes");
            for (int i = 0; i < node_count; ++i) {
                const double theta = rng.angle();
                x[2 * i] = std::cos(theta);
                x[2 * i + 1] = std::sin(theta);
            }
            break;
        }
        case InitialCondition::Kind::Explicit:
            break;  // handled above
    }
    return x;
}

Eigen::VectorXd rhs_pattern(double t, const Eigen::VectorXd& x, const NodeDynamics& dyn,
                            const Topology& topo, const CouplingProtocol& proto, double k) {
    const int n = dyn.state_dim();
    Eigen::VectorXd coupling = Eigen::VectorXd::Zero(x.size());
    for (const auto& [i, j] : topo.edges) {
        const auto xi = x.segment(i * n, n);
        const auto xj = x.segment(j * n, n);
        coupling.segment(i * n, n) += proto.transform(i, j) * xj - xi;
        coupling.segment(j * n, n) += proto.transform(j, i) * xi - xj;
    }
    Eigen::VectorXd out(x.size());
    for (int i = 0; i < topo.node_count; ++i)
        out.segment(i * n, n) =
            dyn.eval(t, x.segment(i * n, n)) + k * coupling.segment(i * n, n);
    return out;
}

Eigen::VectorXd rhs_lti(double t, const Eigen::VectorXd& x, const Eigen::MatrixXd& a,
                        const Eigen::MatrixXd& b, const Eigen::MatrixXd& k_gain,
                        const Topology& topo, const CouplingProtocol& proto, double k) {
    (void)t;
    const int n = static_cast<int>(a.rows());
    const Eigen::MatrixXd bk = b * k_gain;
    Eigen::VectorXd coupling = Eigen::VectorXd::Zero(x.size());
    for (const auto& [i, j] : topo.edges) {
        const auto xi = x.segment(i * n, n);
        const auto xj = x.segment(j * n, n);
        coupling.segment(i * n, n) += proto.transform(i, j) * xj - xi;
        coupling.segment(j * n, n) += proto.transform(j, i) * xi - xj;
    }
    Eigen::VectorXd out(x.size());
    for (int i = 0; i < topo.node_count; ++i)
        out.segment(i * n, n) =
            a * x.segment(i * n, n) + k * (bk * coupling.segment(i * n, n));
    return out;
}

namespace {

void guard_state(const Eigen::VectorXd& x, double t, int state_dim) {
    if (x.allFinite() && x.cwiseAbs().maxCoeff() <= kDivergenceGuard) return;
    int worst = 0;
    double mag = -1.0;
    for (int c = 0; c < x.size(); ++c) {
        const double m = std::isfinite(x[c]) ? std::abs(x[c]) : kDivergenceGuard * 10.0;
        if (m > mag) {
            mag = m;
            worst = c;
        }
    }
    throw std::runtime_error("simulation diverged at t=" + std::to_string(t) + " (node " +
                             std::to_string(worst / state_dim + 1) + ", component " +
                             std::to_string(worst % state_dim + 1) + ")");
}

Trajectory collect(std::vector<double> times, std::vector<Eigen::VectorXd> samples) {
    Trajectory traj;
    traj.times = std::move(times);
    traj.states.resize(static_cast<Eigen::Index>(samples.size()), samples[0].size());
    for (std::size_t s = 0; s < samples.size(); ++s) traj.states.row(s) = samples[s];
    return traj;
}

}  // namespace

Trajectory integrate(const OdeRhs& rhs, const Eigen::VectorXd& x0, int state_dim,
                     const SimConfig& config) {
    if (!(config.t_end > 0.0)) throw std::invalid_argument("integrate: t_end must be positive");
    if (!(config.step > 0.0)) throw std::invalid_argument("integrate: step must be positive");
    if (config.record_every < 1)
        throw std::invalid_argument("integrate: record_every must be >= 1");
    const long long n_steps = std::max(1LL, std::llround(config.t_end / config.step));
    const double h = config.t_end / static_cast<double>(n_steps);

    Eigen::VectorXd x = x0;
    Eigen::VectorXd k1(x.size()), k2(x.size()), k3(x.size()), k4(x.size());
    std::vector<double> times;
    std::vector<Eigen::VectorXd> samples;
    times.push_back(0.0);
    samples.push_back(x);
    for (long long s = 0; s < n_steps; ++s) {
        const double t = static_cast<double>(s) * h;
        rhs(t, x, k1);
        rhs(t + 0.5 * h, x + (0.5 * h) * k1, k2);
        rhs(t + 0.5 * h, x + (0.5 * h) * k2, k3);
        rhs(t + h, x + h * k3, k4);
        x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const double t_next = static_cast<double>(s + 1) * h;
        guard_state(x, t_next, state_dim);
        if ((s + 1) % config.record_every == 0 || s + 1 == n_steps) {
            times.push_back(t_next);
            samples.push_back(x);
        }
    }
    return collect(std::move(times), std::move(samples));
}

Trajectory step_discrete(const OdeRhs& map, const Eigen::VectorXd& x0, int state_dim,
                         const SimConfig& config) {
    if (!(config.t_end >= 1.0))
        throw std::invalid_argument("step_discrete: t_end is the step count, must be >= 1");
    if (config.record_every < 1)
        throw std::invalid_argument("step_discrete: record_every must be >= 1");
    const long long n_steps = std::llround(config.t_end);

    Eigen::VectorXd x = x0;
    Eigen::VectorXd next(x.size());
    std::vector<double> times;
    std::vector<Eigen::VectorXd> samples;
    times.push_back(0.0);
    samples.push_back(x);
    for (long long s = 0; s < n_steps; ++s) {
        map(static_cast<double>(s), x, next);
        x = next;
        guard_state(x, static_cast<double>(s + 1), state_dim);
        if ((s + 1) % config.record_every == 0 || s + 1 == n_steps) {
            times.push_back(static_cast<double>(s + 1));
            samples.push_back(x);
        }
    }
    return collect(std::move(times), std::move(samples));
}

Eigen::VectorXd Trajectory::node_state(int sample, int node, int state_dim) const {
    return states.row(sample).segment(node * state_dim, state_dim);
}

Trajectory simulate_pattern(const NodeDynamics& dyn, const Topology& topo,
                            const CouplingProtocol& proto, const SimConfig& config) {
    if (proto.node_count() != topo.node_count)
        throw std::invalid_argument("simulate: protocol and topology disagree on node count");
    if (proto.state_dim() != dyn.state_dim())
        throw std::invalid_argument("simulate: protocol and dynamics disagree on state size");
    const Eigen::VectorXd x0 = materialize(config.init, topo.node_count, dyn.state_dim());
    OdeRhs rhs;
    if (dyn.uses_bk_coupling()) {
        rhs = [&](double t, const Eigen::VectorXd& x, Eigen::VectorXd& dx) {
            dx = rhs_lti(t, x, dyn.A(), dyn.B(), dyn.K(), topo, proto, config.coupling_gain);
        };
    } else {
        rhs = [&](double t, const Eigen::VectorXd& x, Eigen::VectorXd& dx) {
            dx = rhs_pattern(t, x, dyn, topo, proto, config.coupling_gain);
        };
    }
    if (dyn.kind() == DynamicsKind::Discrete)
        return step_discrete(rhs, x0, dyn.state_dim(), config);
    return integrate(rhs, x0, dyn.state_dim(), config);
}

Trajectory simulate_auxiliary(const NodeDynamics& dyn, const Topology& topo,
                              const SimConfig& config) {
    Partition trivial;
    trivial.assignment.assign(topo.node_count, 0);
    trivial.group_symmetries = {identity_symmetry(dyn.state_dim())};
    return simulate_pattern(dyn, topo, CouplingProtocol(trivial, topo.edges), config);
}

std::string trajectory_csv(const Trajectory& traj, int state_dim) {
    const int node_count = static_cast<int>(traj.states.cols()) / state_dim;
    std::string out = "t";
    for (int i = 1; i <= node_count; ++i)
        for (int s = 1; s <= state_dim; ++s)
            out += ",n" + std::to_string(i) + "_s" + std::to_string(s);
    out += "\n";
    char buf[40];
    for (int row = 0; row < traj.sample_count(); ++row) {
        std::snprintf(buf, sizeof(buf), "%.17g", traj.times[row]);
        out += buf;
        for (int c = 0; c < traj.states.cols(); ++c) {
            std::snprintf(buf, sizeof(buf), ",%.17g", traj.states(row, c));
            out += buf;
        }
        out += "\n";
    }
    return out;
}

void write_trajectory_csv(const Trajectory& traj, int state_dim, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << trajectory_csv(traj, state_dim);
    if (!f.flush()) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace sympat
