#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sympat/protocol.hpp"
#include "sympat/scenario.hpp"
#include "sympat/sim.hpp"
#include "sympat/symmetry.hpp"

namespace sympat {

inline constexpr double kPatternTol = 1e-3;
inline constexpr double kDefaultWindowFraction = 0.2;

struct GroupDetail {
    int group = 0;
    double within_error = 0.0;
};

struct PatternReport {
    bool achieved = false;
    double within_error = 0.0;  // max over groups of within-group deviation
    double cross_error = 0.0;   // max over group pairs of transformed mismatch
    double tol = kPatternTol;
    int window_begin = 0;  // first trajectory sample inside the scoring window
    double window_t_start = 0.0;
    double window_t_end = 0.0;
    std::vector<GroupDetail> groups;
};

// Max over the trailing window of max_{i,j in same group} ||x_i - x_j||_inf.
double within_group_error(const Trajectory& traj, const Partition& p,
                          double window_fraction = kDefaultWindowFraction);

// Max over the window of ||gamma_h x_i - gamma_k x_j||_inf for i in group h,
// j in group k, h != k. Zero exactly when every node tracks gamma_h^T s1.
double cross_group_error(const Trajectory& traj, const Partition& p,
                         double window_fraction = kDefaultWindowFraction);

PatternReport evaluate_pattern(const Trajectory& traj, const Partition& p,
                               double window_fraction = kDefaultWindowFraction,
                               double tol = kPatternTol);

struct HypothesisAudit {
    bool h1 = false;  // every group symmetry is certified equivariant
    std::vector<EquivarianceReport> h1_reports;  // one per group symmetry
    bool h1_commuting = true;  // A gamma = gamma A, checked for linear dynamics
    double h1_residual = 0.0;  // worst equivariance residual
    bool h2 = false;           // reciprocity, identity diagonal, orthogonality
    double h2_residual = 0.0;
    bool h3 = false;           // auxiliary network synchronizes empirically
    double h3_residual = 0.0;  // aux within-group error over the window
    bool overall() const { return h1 && h2 && h3; }
};

// H1 samples equivariance of the closed-loop field under every group
// symmetry (plus commutation for linear dynamics), H2 re-derives the
// synthesized transforms, H3 simulates the auxiliary network with the
// scenario's gain and horizon and scores it against tol.
HypothesisAudit audit_hypotheses(const Scenario& s,
                                 double window_fraction = kDefaultWindowFraction,
                                 double tol = kPatternTol);

// H1 failure stops the design pipeline unless overridden.
struct HypothesisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DesignOutcome {
    CouplingProtocol protocol;
    HypothesisAudit audit;
    Trajectory trajectory;
    PatternReport report;
    bool forced = false;
};

// The four-step design procedure: close the loop, certify equivariance,
// build the partition's protocol, simulate and score. Throws
// HypothesisError on H1 failure unless force is set.
DesignOutcome design_pipeline(const Scenario& s, bool force = false,
                              double window_fraction = kDefaultWindowFraction,
                              double tol = kPatternTol);

// max_t,X ||D F(t,X) - F(t,DX)||_inf over random stacked states; F applies
// the node field blockwise. Near zero iff every block commutes with f.
double lemma1_residual(const NodeDynamics& dyn, const BlockDiagonalTransform& d,
                       int sample_count = 200, double domain_radius = 5.0,
                       std::uint64_t seed = 42);

// Phase lag of each group behind group 0 in degrees, in [0, 360), estimated
// from linearly interpolated zero upcrossings of the first state component
// of each group's lowest-indexed node inside the window. Planar states.
std::vector<double> phase_lags_degrees(const Trajectory& traj, const Partition& p,
                                       double window_fraction = kDefaultWindowFraction);

// Sign changes of one state component inside the scoring window.
int count_zero_crossings(const Trajectory& traj, int node, int state_index,
                         int state_dim,
                         double window_fraction = kDefaultWindowFraction);

}  // namespace sympat
