#include "sympat/protocol.hpp"

#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace sympat {

namespace {

std::vector<int> to_zero_based(int node_count, const std::vector<int>& labels,
                               const char* what) {
    std::vector<int> out;
    out.reserve(labels.size());
    std::set<int> seen;
    for (int label : labels) {
        if (label < 1 || label > node_count)
            throw std::invalid_argument(std::string(what) + ": node label " +
                                        std::to_string(label) + " out of range 1.." +
                                        std::to_string(node_count));
        if (!seen.insert(label).second)
            throw std::invalid_argument(std::string(what) + ": duplicate node label " +
                                        std::to_string(label));
        out.push_back(label - 1);
    }
    return out;
}

}  // namespace

std::vector<std::vector<int>> Partition::groups() const {
    std::vector<std::vector<int>> out(group_count());
    for (int i = 0; i < node_count(); ++i) out[assignment[i]].push_back(i);
    return out;
}

Partition build_bipartite_partition(int node_count, const std::vector<int>& group_star_one_based,
                                    const SymmetryElement& gamma) {
    if (node_count < 2) throw std::invalid_argument("partition: need at least two nodes");
    const auto star = to_zero_based(node_count, group_star_one_based, "partition");
    if (star.empty()) throw std::invalid_argument("partition: G* must be nonempty");
    if (static_cast<int>(star.size()) == node_count)
        throw std::invalid_argument("partition: G* must be a proper subset");
    Partition p;
    p.assignment.assign(node_count, 0);
    for (int i : star) p.assignment[i] = 1;
    p.group_symmetries = {identity_symmetry(gamma.dim()), gamma};
    return p;
}

Partition build_multipartite_partition(int node_count,
                                       const std::vector<std::vector<int>>& groups_one_based,
                                       std::vector<SymmetryElement> symmetries) {
    if (groups_one_based.size() != symmetries.size())
        throw std::invalid_argument("partition: group count != symmetry count");
    if (symmetries.empty()) throw std::invalid_argument("partition: need at least one group");
    const int dim = symmetries[0].dim();
    for (const auto& s : symmetries)
        if (s.dim() != dim)
            throw std::invalid_argument("partition: symmetry dimensions disagree");
    Partition p;
    p.assignment.assign(node_count, -1);
    for (std::size_t g = 0; g < groups_one_based.size(); ++g) {
        if (groups_one_based[g].empty())
            throw std::invalid_argument("partition: group " + std::to_string(g + 1) +
                                        " is empty");
        for (int i : to_zero_based(node_count, groups_one_based[g], "partition")) {
            if (p.assignment[i] != -1)
                throw std::invalid_argument("partition: node " + std::to_string(i + 1) +
                                            " assigned to two groups");
            p.assignment[i] = static_cast<int>(g);
        }
    }
    for (int i = 0; i < node_count; ++i)
        if (p.assignment[i] == -1)
            throw std::invalid_argument("partition: node " + std::to_string(i + 1) +
                                        " not covered by any group");
    p.group_symmetries = std::move(symmetries);
    return p;
}

CouplingProtocol::CouplingProtocol(const Partition& p, std::vector<std::pair<int, int>> edges)
    : group_count_(p.group_count()),
      state_dim_(p.state_dim()),
      assignment_(p.assignment),
      edges_(std::move(edges)) {
    for (const auto& [i, j] : edges_) {
        if (i < 0 || j < 0 || i >= p.node_count() || j >= p.node_count())
            throw std::invalid_argument("protocol: edge references unknown node");
    }
    // T_hk = sigma_h^T sigma_k; T_hh = I and T_kh = T_hk^T exactly
    pair_transforms_.resize(static_cast<std::size_t>(group_count_) * group_count_);
    for (int h = 0; h < group_count_; ++h) {
        pair_transforms_[h * group_count_ + h] =
            Eigen::MatrixXd::Identity(state_dim_, state_dim_);
        for (int k = h + 1; k < group_count_; ++k) {
            Eigen::MatrixXd t_hk =
                p.group_symmetries[h].matrix.transpose() * p.group_symmetries[k].matrix;
            pair_transforms_[k * group_count_ + h] = t_hk.transpose();
            pair_transforms_[h * group_count_ + k] = std::move(t_hk);
        }
    }
}

const Eigen::MatrixXd& CouplingProtocol::transform(int node_i, int node_j) const {
    return group_transform(assignment_[node_i], assignment_[node_j]);
}

const Eigen::MatrixXd& CouplingProtocol::group_transform(int group_h, int group_k) const {
    return pair_transforms_[group_h * group_count_ + group_k];
}

CouplingProtocol synthesize_protocol(const Partition& p, const Topology& t) {
    if (p.node_count() != t.node_count)
        throw std::invalid_argument("protocol: partition covers " +
                                    std::to_string(p.node_count()) + " nodes, topology has " +
                                    std::to_string(t.node_count));
    return CouplingProtocol(p, t.edges);
}

BlockDiagonalTransform build_D(const Partition& p) {
    BlockDiagonalTransform d;
    d.blocks.reserve(p.node_count());
    for (int i = 0; i < p.node_count(); ++i)
        d.blocks.push_back(p.group_symmetries[p.assignment[i]].matrix);
    return d;
}

Eigen::VectorXd apply_D(const BlockDiagonalTransform& d, const Eigen::VectorXd& x,
                        bool transpose) {
    const int n = d.state_dim();
    if (x.size() != d.total_dim())
        throw std::invalid_argument("apply_D: state size does not match transform");
    Eigen::VectorXd out(x.size());
    for (int i = 0; i < d.node_count(); ++i) {
        if (transpose)
            out.segment(i * n, n) = d.blocks[i].transpose() * x.segment(i * n, n);
        else
            out.segment(i * n, n) = d.blocks[i] * x.segment(i * n, n);
    }
    return out;
}

}  // namespace sympat
