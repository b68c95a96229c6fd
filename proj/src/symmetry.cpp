#include "sympat/symmetry.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "sympat/rng.hpp"

namespace sympat {

bool check_orthogonal(const Eigen::MatrixXd& m, double tol) {
    if (m.rows() != m.cols() || m.rows() == 0) return false;
    const Eigen::MatrixXd residual =
        m.transpose() * m - Eigen::MatrixXd::Identity(m.rows(), m.cols());
    return residual.cwiseAbs().maxCoeff() <= tol;
}

SymmetryElement make_symmetry(Eigen::MatrixXd m, std::string label) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw std::invalid_argument("symmetry: matrix must be square and nonempty");
    if (!check_orthogonal(m))
        throw std::invalid_argument("symmetry: matrix is not orthogonal (|g^T g - I| > tol)");
    return SymmetryElement{std::move(m), std::move(label)};
}

SymmetryElement identity_symmetry(int n) {
    return SymmetryElement{Eigen::MatrixXd::Identity(n, n), "I"};
}

SymmetryElement make_rotation_2d(double angle_rad) {
    Eigen::MatrixXd r(2, 2);
    const double c = std::cos(angle_rad);
    const double s = std::sin(angle_rad);
    r << c, -s, s, c;
    return SymmetryElement{std::move(r), "R(" + std::to_string(angle_rad) + ")"};
}

EquivarianceReport check_equivariance(const NodeDynamics& f, const SymmetryElement& gamma,
                                      int sample_count, double domain_radius,
                                      std::uint64_t seed) {
    if (gamma.dim() != f.state_dim())
        throw std::invalid_argument("equivariance: symmetry dimension does not match dynamics");
    SampleRng rng(seed);
    EquivarianceReport report;
    report.samples_tested = sample_count;
    Eigen::VectorXd x(f.state_dim());
    for (int s = 0; s < sample_count; ++s) {
        const double t = rng.uniform(0.0, 10.0);
        for (int c = 0; c < x.size(); ++c) x[c] = rng.uniform(-domain_radius, domain_radius);
        const double r =
            (f.eval(t, gamma.matrix * x) - gamma.matrix * f.eval(t, x)).cwiseAbs().maxCoeff();
        if (r > report.max_residual) {
            report.max_residual = r;
            report.worst_t = t;
            report.worst_x = x;
        }
    }
    report.passed = report.max_residual <= kTolEquiv;
    return report;
}

bool check_commuting(const Eigen::MatrixXd& a, const SymmetryElement& gamma, double tol) {
    if (a.rows() != a.cols() || gamma.dim() != a.rows()) return false;
    return (a * gamma.matrix - gamma.matrix * a).cwiseAbs().maxCoeff() <= tol;
}

std::vector<Eigen::MatrixXd> commutant_basis(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols() || a.rows() == 0)
        throw std::invalid_argument("commutant: matrix must be square and nonempty");
    const int n = static_cast<int>(a.rows());
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
    // vec(AX - XA) = (I (x) A - A^T (x) I) vec(X), column-major vec
    Eigen::MatrixXd op = Eigen::MatrixXd::Zero(n * n, n * n);
    for (int bi = 0; bi < n; ++bi)
        for (int bj = 0; bj < n; ++bj) {
            op.block(bi * n, bj * n, n, n) = eye(bi, bj) * a - a(bj, bi) * eye;
        }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(op, Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    const double cutoff = sigma.size() > 0 ? kTolRankFactor * sigma[0] : 0.0;
    std::vector<Eigen::MatrixXd> basis;
    for (int c = 0; c < sigma.size(); ++c) {
        if (sigma[c] <= cutoff) {
            basis.emplace_back(
                Eigen::Map<const Eigen::MatrixXd>(svd.matrixV().col(c).data(), n, n));
        }
    }
    return basis;
}

std::vector<SymmetryElement> orthogonal_commutant_members(
    const Eigen::MatrixXd& a, const std::vector<SymmetryElement>& candidates) {
    std::vector<SymmetryElement> members;
    for (const auto& g : candidates) {
        if (check_orthogonal(g.matrix) && check_commuting(a, g)) members.push_back(g);
    }
    return members;
}

}  // namespace sympat
