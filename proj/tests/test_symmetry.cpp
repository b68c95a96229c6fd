#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "sympat/dynamics.hpp"
#include "sympat/symmetry.hpp"
#include "test_util.hpp"

using namespace sympat;
using std::numbers::pi;

namespace {

// null space dimension of X -> AX - XA, built column-by-column from the
// images of the unit matrices (independent of the kron-block construction)
int commutant_dim_oracle(const Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    Eigen::MatrixXd op(n * n, n * n);
    int col = 0;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n, n);
            e(i, j) = 1.0;
            const Eigen::MatrixXd image = a * e - e * a;
            op.col(col++) = Eigen::Map<const Eigen::VectorXd>(image.data(), n * n);
        }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(op);
    lu.setThreshold(1e-10);
    return n * n - static_cast<int>(lu.rank());
}

Eigen::MatrixXd chain_matrix(int n) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = 1.0;
    return a;
}

}  // namespace

TEST_SUITE("symmetry") {

TEST_CASE("rotation constructor hits the exact trigonometric values") {
    CHECK((make_rotation_2d(0.0).matrix - Eigen::MatrixXd::Identity(2, 2))
              .cwiseAbs()
              .maxCoeff() == 0.0);

    const Eigen::MatrixXd r120 = make_rotation_2d(2.0 * pi / 3.0).matrix;
    CHECK(r120(0, 0) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(r120(0, 1) == doctest::Approx(-std::sqrt(3.0) / 2.0).epsilon(1e-15));
    CHECK(r120(1, 0) == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-15));
    CHECK(r120(1, 1) == doctest::Approx(-0.5).epsilon(1e-15));

    CHECK((make_rotation_2d(pi).matrix + Eigen::MatrixXd::Identity(2, 2))
              .cwiseAbs()
              .maxCoeff() < 1e-15);
}

TEST_CASE("orthogonality certificate") {
    CHECK(check_orthogonal(-Eigen::MatrixXd::Identity(2, 2)));
    CHECK(check_orthogonal(make_rotation_2d(2.0 * pi / 3.0).matrix));
    Eigen::MatrixXd shear(2, 2);
    shear << 1, 1, 0, 1;
    CHECK_FALSE(check_orthogonal(shear));
    CHECK_FALSE(check_orthogonal(Eigen::MatrixXd::Ones(2, 3)));
    CHECK_THROWS_AS(make_symmetry(shear), std::invalid_argument);
}

TEST_CASE("symmetries preserve the norm") {
    SampleRng rng(99);
    const SymmetryElement gammas[] = {make_rotation_2d(1.234),
                                      make_symmetry(-Eigen::MatrixXd::Identity(2, 2)),
                                      make_symmetry(testutil::random_orthogonal(rng, 4))};
    for (const auto& gamma : gammas) {
        for (int s = 0; s < 1000; ++s) {
            Eigen::VectorXd x(gamma.dim());
            for (int c = 0; c < x.size(); ++c) x[c] = rng.uniform(-10.0, 10.0);
            CHECK(std::abs((gamma.matrix * x).norm() - x.norm()) <= 1e-12 * x.norm());
        }
    }
}

TEST_CASE("equivariance certificate on the oscillator field") {
    const SymmetryElement minus_i = make_symmetry(-Eigen::MatrixXd::Identity(2, 2));

    const auto odd = check_equivariance(NodeDynamics::fitzhugh_nagumo(), minus_i);
    CHECK(odd.passed);
    CHECK(odd.max_residual <= 1e-12);
    CHECK(odd.samples_tested == 200);

    // identity symmetry: residual is exactly zero
    const auto trivial =
        check_equivariance(NodeDynamics::fitzhugh_nagumo(0.7, 0.8, 3.0, 0.5), identity_symmetry(2));
    CHECK(trivial.max_residual == 0.0);

    // a != 0 shifts the recovery equation by the constant 2a/c
    const auto broken = check_equivariance(NodeDynamics::fitzhugh_nagumo(0.7), minus_i);
    CHECK_FALSE(broken.passed);
    CHECK(broken.max_residual == doctest::Approx(2.0 * 0.7 / 3.0).epsilon(1e-12));
    CHECK(broken.worst_x.size() == 2);

    const auto controlled = check_equivariance(
        NodeDynamics::zero(1).with_controller(pitchfork_control()),
        make_symmetry(-Eigen::MatrixXd::Identity(1, 1)));
    CHECK(controlled.passed);

    CHECK_THROWS_AS(check_equivariance(NodeDynamics::fitzhugh_nagumo(),
                                       make_symmetry(-Eigen::MatrixXd::Identity(3, 3))),
                    std::invalid_argument);
}

TEST_CASE("equivariance is closed under transpose for orthogonal symmetries") {
    const NodeDynamics harmonic = NodeDynamics::harmonic();
    const SymmetryElement r = make_rotation_2d(2.0 * pi / 3.0);
    const auto fwd = check_equivariance(harmonic, r);
    const SymmetryElement rt = make_symmetry(r.matrix.transpose());
    const auto bwd = check_equivariance(harmonic, rt);
    CHECK(fwd.passed);
    CHECK(bwd.passed);
    CHECK(bwd.max_residual <= kTolEquiv * (1.0 + kTolOrtho));
}

TEST_CASE("commutation checks") {
    const Eigen::MatrixXd harmonic = NodeDynamics::harmonic().A();
    CHECK(check_commuting(harmonic, make_rotation_2d(0.7)));
    CHECK(check_commuting(harmonic, make_rotation_2d(2.0 * pi / 3.0)));

    const Eigen::MatrixXd chain2 = chain_matrix(2);
    CHECK(check_commuting(chain2, make_symmetry(-Eigen::MatrixXd::Identity(2, 2))));
    CHECK_FALSE(check_commuting(chain2, make_rotation_2d(pi / 2.0)));
    CHECK_FALSE(check_commuting(chain2, make_rotation_2d(pi / 2.0), 1e-6));
}

TEST_CASE("commutant basis dimensions") {
    // chain: the commutant is span{I, A, ..., A^(n-1)}
    for (int n = 2; n <= 5; ++n) {
        const Eigen::MatrixXd a = chain_matrix(n);
        const auto basis = commutant_basis(a);
        CHECK(static_cast<int>(basis.size()) == n);
        CHECK(static_cast<int>(basis.size()) == commutant_dim_oracle(a));
        for (std::size_t b = 0; b < basis.size(); ++b) {
            CHECK((a * basis[b] - basis[b] * a).cwiseAbs().maxCoeff() < 1e-9);
            for (std::size_t c = 0; c < basis.size(); ++c) {
                const double dot = (basis[b].array() * basis[c].array()).sum();
                CHECK(dot == doctest::Approx(b == c ? 1.0 : 0.0).epsilon(1e-9));
            }
        }
    }

    CHECK(commutant_basis(Eigen::MatrixXd::Identity(2, 2)).size() == 4);
    const auto harmonic_basis = commutant_basis(NodeDynamics::harmonic().A());
    CHECK(harmonic_basis.size() == 2);
    CHECK(commutant_dim_oracle(NodeDynamics::harmonic().A()) == 2);
}

TEST_CASE("orthogonal commutant members") {
    SampleRng rng(7);
    std::vector<SymmetryElement> candidates = {identity_symmetry(3),
                                               make_symmetry(-Eigen::MatrixXd::Identity(3, 3), "-I")};
    for (int c = 0; c < 100; ++c)
        candidates.push_back(make_symmetry(testutil::random_orthogonal(rng, 3)));

    const auto members = orthogonal_commutant_members(chain_matrix(3), candidates);
    REQUIRE(members.size() == 2);
    CHECK((members[0].matrix - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((members[1].matrix + Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);

    // every planar rotation commutes with the harmonic generator; reflections do not
    Eigen::MatrixXd reflect(2, 2);
    reflect << 1, 0, 0, -1;
    const auto rotations = orthogonal_commutant_members(
        NodeDynamics::harmonic().A(),
        {make_rotation_2d(0.0), make_rotation_2d(2.0 * pi / 3.0),
         make_rotation_2d(4.0 * pi / 3.0), make_symmetry(reflect)});
    CHECK(rotations.size() == 3);

    CHECK(orthogonal_commutant_members(chain_matrix(3), {}).empty());
}

}  // TEST_SUITE
