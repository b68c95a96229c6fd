#pragma once

#include <vector>

#include <Eigen/Dense>

#include "sympat/graph.hpp"
#include "sympat/symmetry.hpp"

namespace sympat {

// Assignment of each node to one of r groups, each bound to a symmetry.
struct Partition {
    std::vector<int> assignment;  // node -> group index
    std::vector<SymmetryElement> group_symmetries;

    int node_count() const { return static_cast<int>(assignment.size()); }
    int group_count() const { return static_cast<int>(group_symmetries.size()); }
    int state_dim() const { return group_symmetries.empty() ? 0 : group_symmetries[0].dim(); }
    std::vector<std::vector<int>> groups() const;
};

// Two groups: G bound to the identity, G* bound to gamma. group_star holds
// 1-based node labels and must be a nonempty proper subset of {1..N}.
Partition build_bipartite_partition(int node_count, const std::vector<int>& group_star_one_based,
                                    const SymmetryElement& gamma);

// r groups in the given order; 1-based node labels, pairwise disjoint,
// covering all nodes.
Partition build_multipartite_partition(int node_count,
                                       const std::vector<std::vector<int>>& groups_one_based,
                                       std::vector<SymmetryElement> symmetries);

// Linear coupling transforms T_ij = gamma_h^T gamma_k for h = group(i),
// k = group(j). Cached per ordered group pair; within-group transforms are
// exactly I and T_ji = T_ij^T exactly by construction.
class CouplingProtocol {
public:
    CouplingProtocol(const Partition& p, std::vector<std::pair<int, int>> edges);

    const Eigen::MatrixXd& transform(int node_i, int node_j) const;
    const Eigen::MatrixXd& group_transform(int group_h, int group_k) const;

    int node_count() const { return static_cast<int>(assignment_.size()); }
    int group_count() const { return group_count_; }
    int state_dim() const { return state_dim_; }
    const std::vector<int>& assignment() const { return assignment_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

private:
    int group_count_ = 0;
    int state_dim_ = 0;
    std::vector<int> assignment_;
    std::vector<Eigen::MatrixXd> pair_transforms_;  // row-major r x r
    std::vector<std::pair<int, int>> edges_;
};

CouplingProtocol synthesize_protocol(const Partition& p, const Topology& t);

// D = diag{sigma_1, ..., sigma_N} with sigma_i the symmetry of node i's group.
struct BlockDiagonalTransform {
    std::vector<Eigen::MatrixXd> blocks;

    int node_count() const { return static_cast<int>(blocks.size()); }
    int state_dim() const { return blocks.empty() ? 0 : static_cast<int>(blocks[0].rows()); }
    int total_dim() const { return node_count() * state_dim(); }
};

BlockDiagonalTransform build_D(const Partition& p);

// Blockwise product D*X, or D^T*X with transpose set.
Eigen::VectorXd apply_D(const BlockDiagonalTransform& d, const Eigen::VectorXd& x,
                        bool transpose = false);

}  // namespace sympat
