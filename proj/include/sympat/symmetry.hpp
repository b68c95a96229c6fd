#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sympat/dynamics.hpp"

namespace sympat {

// Orthogonality certificate on the max-norm of gamma^T gamma - I.
inline constexpr double kTolOrtho = 1e-10;
// Absolute tolerance on the max equivariance residual.
inline constexpr double kTolEquiv = 1e-9;
// Singular values below kTolRankFactor * sigma_max count as zero.
inline constexpr double kTolRankFactor = 1e-10;

// An element of O(n): gamma^T gamma = I within kTolOrtho.
struct SymmetryElement {
    Eigen::MatrixXd matrix;
    std::string label;

    int dim() const { return static_cast<int>(matrix.rows()); }
};

// Validating constructor; throws if the matrix is not orthogonal.
SymmetryElement make_symmetry(Eigen::MatrixXd m, std::string label = "");
SymmetryElement identity_symmetry(int n);
// [[cos a, -sin a], [sin a, cos a]]
SymmetryElement make_rotation_2d(double angle_rad);

bool check_orthogonal(const Eigen::MatrixXd& m, double tol = kTolOrtho);

struct EquivarianceReport {
    bool passed = false;
    double max_residual = 0.0;
    int samples_tested = 0;
    double worst_t = 0.0;
    Eigen::VectorXd worst_x;
};

// Samples r(t,x) = |f(t, gamma x) - gamma f(t,x)| at sample_count
// pseudo-random points, t in [0, 10], x uniform in the centered cube of
// half-width domain_radius. passed iff max residual <= kTolEquiv.
EquivarianceReport check_equivariance(const NodeDynamics& f, const SymmetryElement& gamma,
                                      int sample_count = 200, double domain_radius = 5.0,
                                      std::uint64_t seed = 42);

// True iff |A gamma - gamma A|_max <= tol.
bool check_commuting(const Eigen::MatrixXd& a, const SymmetryElement& gamma,
                     double tol = kTolOrtho);

// Orthonormal (entrywise inner product) basis of {X : AX = XA}, from the
// SVD of the n^2 x n^2 commutator operator.
std::vector<Eigen::MatrixXd> commutant_basis(const Eigen::MatrixXd& a);

// Candidates that are orthogonal and commute with A, both within tolerance.
std::vector<SymmetryElement> orthogonal_commutant_members(
    const Eigen::MatrixXd& a, const std::vector<SymmetryElement>& candidates);

}  // namespace sympat
