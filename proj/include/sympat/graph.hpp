#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace sympat {

// Undirected simple graph. Edges are stored 0-based with first < second,
// sorted and deduplicated; config files use 1-based labels.
struct Topology {
    int node_count = 0;
    std::vector<std::pair<int, int>> edges;

    std::vector<int> degrees() const;
    std::vector<std::vector<int>> neighbors() const;
};

// Validates and normalizes a 1-based edge list. Throws std::invalid_argument
// on self-loops, out-of-range indices, or a disconnected graph.
Topology build_topology(int node_count, const std::vector<std::pair<int, int>>& edges_one_based);

// True iff a breadth-first search from node 0 reaches every node.
bool is_connected(const Topology& t);

// L = D_deg - A with 0/1 adjacency.
Eigen::MatrixXd laplacian(const Topology& t);

}  // namespace sympat
