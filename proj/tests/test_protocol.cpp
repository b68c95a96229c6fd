#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "sympat/protocol.hpp"
#include "sympat/rng.hpp"
#include "test_util.hpp"

using namespace sympat;
using std::numbers::pi;

namespace {

SymmetryElement minus_i2() { return make_symmetry(-Eigen::MatrixXd::Identity(2, 2), "-I"); }

Partition tripartite() {
    return build_multipartite_partition(
        10, {{2, 5, 7, 10}, {1, 4, 6, 9}, {3, 8}},
        {make_rotation_2d(0.0), make_rotation_2d(2.0 * pi / 3.0),
         make_rotation_2d(4.0 * pi / 3.0)});
}

}  // namespace

TEST_SUITE("protocol") {

TEST_CASE("bipartite partition for the five-node example") {
    const Partition p = build_bipartite_partition(5, {2, 4, 5}, minus_i2());
    CHECK(p.assignment == std::vector<int>{0, 1, 0, 1, 1});
    CHECK(p.group_count() == 2);
    CHECK(p.state_dim() == 2);
    CHECK((p.group_symmetries[0].matrix - Eigen::MatrixXd::Identity(2, 2))
              .cwiseAbs()
              .maxCoeff() == 0.0);
    const auto groups = p.groups();
    CHECK(groups[0] == std::vector<int>{0, 2});
    CHECK(groups[1] == std::vector<int>{1, 3, 4});

    CHECK_THROWS_AS(build_bipartite_partition(5, {}, minus_i2()), std::invalid_argument);
    CHECK_THROWS_AS(build_bipartite_partition(3, {1, 2, 3}, minus_i2()), std::invalid_argument);
    CHECK_THROWS_AS(build_bipartite_partition(5, {2, 2}, minus_i2()), std::invalid_argument);
    CHECK_THROWS_AS(build_bipartite_partition(5, {6}, minus_i2()), std::invalid_argument);
}

TEST_CASE("multipartite partition validation") {
    const Partition p = tripartite();
    CHECK(p.group_count() == 3);
    CHECK(p.assignment == std::vector<int>{1, 0, 2, 1, 0, 1, 0, 2, 1, 0});

    CHECK_THROWS_AS(build_multipartite_partition(3, {{1, 2}, {2, 3}},
                                                 {identity_symmetry(1), identity_symmetry(1)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_multipartite_partition(3, {{1, 2}},
                                                 {identity_symmetry(1), identity_symmetry(1)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_multipartite_partition(3, {{1, 2}}, {identity_symmetry(1)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        build_multipartite_partition(2, {{1}, {2}},
                                     {identity_symmetry(1), identity_symmetry(2)}),
        std::invalid_argument);
}

TEST_CASE("three-branch coupling table of the bipartite protocol") {
    const Topology t = build_topology(5, {{1, 2}, {1, 3}, {3, 4}, {3, 5}});
    const Partition p = build_bipartite_partition(5, {2, 4, 5}, minus_i2());
    const CouplingProtocol proto = synthesize_protocol(p, t);

    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(2, 2);
    CHECK((proto.transform(0, 2) - eye).cwiseAbs().maxCoeff() == 0.0);   // G to G
    CHECK((proto.transform(0, 1) + eye).cwiseAbs().maxCoeff() == 0.0);   // G to G*
    CHECK((proto.transform(1, 0) + eye).cwiseAbs().maxCoeff() == 0.0);   // G* to G
    CHECK((proto.group_transform(1, 1) - eye).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("group-pair transforms are cached with exact reciprocity") {
    const Topology ring = build_topology(10, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6},
                                              {6, 7}, {7, 8}, {8, 9}, {9, 10}, {1, 10}});
    const CouplingProtocol proto = synthesize_protocol(tripartite(), ring);

    for (int h = 0; h < 3; ++h) {
        CHECK((proto.group_transform(h, h) - Eigen::MatrixXd::Identity(2, 2))
                  .cwiseAbs()
                  .maxCoeff() == 0.0);
        for (int k = 0; k < 3; ++k)
            CHECK((proto.group_transform(h, k) - proto.group_transform(k, h).transpose())
                      .cwiseAbs()
                      .maxCoeff() == 0.0);
    }

    // G2 -> G3 edge carries R(120)^T R(240) = R(120)
    const Eigen::MatrixXd expected = make_rotation_2d(2.0 * pi / 3.0).matrix;
    CHECK((proto.group_transform(1, 2) - expected).cwiseAbs().maxCoeff() < 1e-15);

    CHECK_THROWS_AS(synthesize_protocol(tripartite(),
                                        build_topology(2, {{1, 2}})),
                    std::invalid_argument);
}

TEST_CASE("single-group protocol is the identity table") {
    const Topology t = build_topology(3, {{1, 2}, {2, 3}});
    Partition p;
    p.assignment = {0, 0, 0};
    p.group_symmetries = {identity_symmetry(2)};
    const CouplingProtocol proto = synthesize_protocol(p, t);
    for (const auto& [i, j] : t.edges)
        CHECK((proto.transform(i, j) - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() ==
              0.0);
}

TEST_CASE("block transform for the tripartite example") {
    const BlockDiagonalTransform d = build_D(tripartite());
    REQUIRE(d.node_count() == 10);
    CHECK(d.state_dim() == 2);
    // diag{g2, g1, g3, g2, g1, g2, g1, g3, g2, g1}
    const int expected_groups[] = {1, 0, 2, 1, 0, 1, 0, 2, 1, 0};
    const SymmetryElement syms[] = {make_rotation_2d(0.0), make_rotation_2d(2.0 * pi / 3.0),
                                    make_rotation_2d(4.0 * pi / 3.0)};
    for (int i = 0; i < 10; ++i)
        CHECK((d.blocks[i] - syms[expected_groups[i]].matrix).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("block transform is orthogonal and invertible by transpose") {
    const BlockDiagonalTransform d = build_D(tripartite());
    SampleRng rng(5);
    Eigen::VectorXd x(d.total_dim());
    for (int c = 0; c < x.size(); ++c) x[c] = rng.normal();

    // D^T D = I within 1e-12, checked through the two applications
    const Eigen::VectorXd round_trip = apply_D(d, apply_D(d, x), /*transpose=*/true);
    CHECK((round_trip - x).cwiseAbs().maxCoeff() <= 1e-14 * x.cwiseAbs().maxCoeff());
    CHECK(std::abs(apply_D(d, x).norm() - x.norm()) <= 1e-12 * x.norm());

    CHECK_THROWS_AS(apply_D(d, Eigen::VectorXd::Zero(3)), std::invalid_argument);
}

TEST_CASE("bipartite blocks flip the starred nodes") {
    const Partition p = build_bipartite_partition(5, {2, 4, 5}, minus_i2());
    const BlockDiagonalTransform d = build_D(p);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(10);
    x[2] = 1.0;  // node 2, first component
    x[3] = 2.0;
    const Eigen::VectorXd z = apply_D(d, x);
    CHECK(z[2] == -1.0);
    CHECK(z[3] == -2.0);
    // single group, identity: no-op
    Partition one;
    one.assignment = {0, 0};
    one.group_symmetries = {identity_symmetry(2)};
    Eigen::VectorXd y(4);
    y << 1, 2, 3, 4;
    CHECK((apply_D(build_D(one), y) - y).cwiseAbs().maxCoeff() == 0.0);
}

}  // TEST_SUITE
