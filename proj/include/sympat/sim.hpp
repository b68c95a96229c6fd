#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sympat/dynamics.hpp"
#include "sympat/graph.hpp"
#include "sympat/protocol.hpp"

namespace sympat {

// Trajectories abort once |X| exceeds this.
inline constexpr double kDivergenceGuard = 1e12;

// Initial network state: an explicit nN vector or a seeded random draw
// (standard normal, uniform in a box, or uniform on the unit circle).
struct InitialCondition {
    enum class Kind { Explicit, Uniform, Normal, UnitCircle };

    Kind kind = Kind::Normal;
    Eigen::VectorXd values;
    double lo = -1.0;
    double hi = 1.0;
    std::uint64_t seed = 0;

    static InitialCondition explicit_vector(Eigen::VectorXd v);
    static InitialCondition normal(std::uint64_t seed);
    static InitialCondition uniform(double lo, double hi, std::uint64_t seed);
    static InitialCondition unit_circle(std::uint64_t seed);
};

// Draws the nN initial state. unit_circle requires state_dim == 2.
Eigen::VectorXd materialize(const InitialCondition& ic, int node_count, int state_dim);

struct SimConfig {
    double coupling_gain = 1.0;
    double t_end = 0.0;
    double step = 1e-3;
    int record_every = 10;
    InitialCondition init;
};

struct Trajectory {
    std::vector<double> times;
    Eigen::MatrixXd states;  // sample_count x (n*N)
    std::string scenario_digest;

    int sample_count() const { return static_cast<int>(times.size()); }
    Eigen::VectorXd node_state(int sample, int node, int state_dim) const;
};

using OdeRhs = std::function<void(double, const Eigen::VectorXd&, Eigen::VectorXd&)>;

// f(t,x_i) + k * sum_j a_ij (T_ij x_j - x_i), stacked over nodes.
Eigen::VectorXd rhs_pattern(double t, const Eigen::VectorXd& x, const NodeDynamics& dyn,
                            const Topology& topo, const CouplingProtocol& proto, double k);

// A x_i + BK * sum_j a_ij (T_ij x_j - x_i), stacked over nodes.
Eigen::VectorXd rhs_lti(double t, const Eigen::VectorXd& x, const Eigen::MatrixXd& a,
                        const Eigen::MatrixXd& b, const Eigen::MatrixXd& k_gain,
                        const Topology& topo, const CouplingProtocol& proto, double k = 1.0);

// Classical fixed-step RK4. Samples every record_every steps, always
// including t=0 and t_end. Throws on non-finite states with the offending
// time, node and component.
Trajectory integrate(const OdeRhs& rhs, const Eigen::VectorXd& x0, int state_dim,
                     const SimConfig& config);

// Iterates x(t+1) = map(t, x(t)) for t_end steps (t_end is a step count).
Trajectory step_discrete(const OdeRhs& map, const Eigen::VectorXd& x0, int state_dim,
                         const SimConfig& config);

// Integrates the coupled network (or iterates it, for discrete dynamics).
Trajectory simulate_pattern(const NodeDynamics& dyn, const Topology& topo,
                            const CouplingProtocol& proto, const SimConfig& config);

// Same network with the identity protocol: X' = F(t,X) - k (L (x) I_n) X.
Trajectory simulate_auxiliary(const NodeDynamics& dyn, const Topology& topo,
                              const SimConfig& config);

// CSV with header t,n1_s1,...,n1_sn,n2_s1,... at 17 significant digits.
std::string trajectory_csv(const Trajectory& traj, int state_dim);
void write_trajectory_csv(const Trajectory& traj, int state_dim, const std::string& path);

}  // namespace sympat
