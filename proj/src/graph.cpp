#include "sympat/graph.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <string>

namespace sympat {

std::vector<int> Topology::degrees() const {
    std::vector<int> deg(node_count, 0);
    for (const auto& [i, j] : edges) {
        ++deg[i];
        ++deg[j];
    }
    return deg;
}

std::vector<std::vector<int>> Topology::neighbors() const {
    std::vector<std::vector<int>> adj(node_count);
    for (const auto& [i, j] : edges) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());
    return adj;
}

Topology build_topology(int node_count, const std::vector<std::pair<int, int>>& edges_one_based) {
    if (node_count < 1) throw std::invalid_argument("topology: node_count must be positive");
    Topology t;
    t.node_count = node_count;
    t.edges.reserve(edges_one_based.size());
    for (const auto& [a, b] : edges_one_based) {
        if (a < 1 || a > node_count || b < 1 || b > node_count)
            throw std::invalid_argument("topology: edge (" + std::to_string(a) + "," +
                                        std::to_string(b) + ") out of range 1.." +
                                        std::to_string(node_count));
        if (a == b)
            throw std::invalid_argument("topology: self-loop at node " + std::to_string(a));
        t.edges.emplace_back(std::min(a, b) - 1, std::max(a, b) - 1);
    }
    std::sort(t.edges.begin(), t.edges.end());
    t.edges.erase(std::unique(t.edges.begin(), t.edges.end()), t.edges.end());
    if (!is_connected(t)) throw std::invalid_argument("topology: graph is not connected");
    return t;
}

bool is_connected(const Topology& t) {
    if (t.node_count <= 0) return false;
    const auto adj = t.neighbors();
    std::vector<char> seen(t.node_count, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        for (int v : adj[u]) {
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                q.push(v);
            }
        }
    }
    return reached == t.node_count;
}

Eigen::MatrixXd laplacian(const Topology& t) {
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(t.node_count, t.node_count);
    for (const auto& [i, j] : t.edges) {
        l(i, j) -= 1.0;
        l(j, i) -= 1.0;
        l(i, i) += 1.0;
        l(j, j) += 1.0;
    }
    return l;
}

}  // namespace sympat
