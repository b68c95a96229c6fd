#include <stdexcept>

#include "doctest.h"
#include "sympat/graph.hpp"
#include "sympat/rng.hpp"

using namespace sympat;

TEST_SUITE("graph") {

TEST_CASE("five-node example topology") {
    const Topology t = build_topology(5, {{1, 2}, {1, 3}, {3, 4}, {3, 5}});
    CHECK(t.node_count == 5);
    CHECK(t.edges.size() == 4);
    const auto deg = t.degrees();
    CHECK(deg == std::vector<int>{2, 1, 3, 1, 1});
    CHECK(is_connected(t));

    const Eigen::MatrixXd l = laplacian(t);
    CHECK(l(0, 0) == 2.0);
    CHECK(l(1, 1) == 1.0);
    CHECK(l(2, 2) == 3.0);
    CHECK(l(3, 3) == 1.0);
    CHECK(l(4, 4) == 1.0);
    CHECK(l(0, 1) == -1.0);
    CHECK(l(0, 2) == -1.0);
    CHECK(l(2, 3) == -1.0);
    CHECK(l(2, 4) == -1.0);
    CHECK(l(1, 2) == 0.0);
    CHECK((l - l.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(l.rowwise().sum().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("two-node path") {
    const Topology t = build_topology(2, {{1, 2}});
    const Eigen::MatrixXd l = laplacian(t);
    Eigen::MatrixXd expected(2, 2);
    expected << 1, -1, -1, 1;
    CHECK((l - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("normalization and rejection") {
    // duplicates (including swapped order) collapse
    const Topology t = build_topology(3, {{1, 2}, {2, 1}, {2, 3}});
    CHECK(t.edges.size() == 2);

    CHECK_THROWS_AS(build_topology(3, {{1, 1}, {1, 2}, {2, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(build_topology(3, {{1, 4}, {1, 2}, {2, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(build_topology(3, {{0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(build_topology(3, {{1, 2}}), std::invalid_argument);  // node 3 isolated
    CHECK_THROWS_AS(build_topology(0, {}), std::invalid_argument);
}

TEST_CASE("connectivity corner cases") {
    Topology single;
    single.node_count = 1;
    CHECK(is_connected(single));

    Topology split;  // two disjoint edges
    split.node_count = 4;
    split.edges = {{0, 1}, {2, 3}};
    CHECK_FALSE(is_connected(split));
}

TEST_CASE("laplacian spectrum tracks connectivity up to N=50") {
    SampleRng rng(2024);
    for (int n = 2; n <= 50; n += 6) {
        // random spanning tree plus extra chords: always connected
        Topology t;
        t.node_count = n;
        std::vector<std::pair<int, int>> edges;
        for (int v = 1; v < n; ++v)
            edges.emplace_back(static_cast<int>(rng.uniform(0.0, v)) + 1, v + 1);
        for (int extra = 0; extra < n / 2; ++extra) {
            const int a = static_cast<int>(rng.uniform(0.0, n)) + 1;
            const int b = static_cast<int>(rng.uniform(0.0, n)) + 1;
            if (a != b) edges.emplace_back(a, b);
        }
        const Topology conn = build_topology(n, edges);
        const Eigen::MatrixXd l = laplacian(conn);
        CHECK(l.rowwise().sum().cwiseAbs().maxCoeff() == 0.0);
        CHECK((l - l.transpose()).cwiseAbs().maxCoeff() == 0.0);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l);
        CHECK(std::abs(es.eigenvalues()[0]) < 1e-10);
        CHECK(es.eigenvalues()[1] > 1e-10);  // algebraic connectivity

        // two disjoint cliques: zero eigenvalue with multiplicity two
        Topology split;
        split.node_count = 2 * n;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                split.edges.emplace_back(a, b);
                split.edges.emplace_back(n + a, n + b);
            }
        CHECK_FALSE(is_connected(split));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es2(laplacian(split));
        CHECK(std::abs(es2.eigenvalues()[1]) < 1e-10);
    }
}

}  // TEST_SUITE
