#pragma once

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace thp {

using Matrix = Eigen::MatrixXd;
using NodeEdge = std::pair<int, int>;

// D^{-1/2} A D^{-1/2}. Rows and columns of degree-zero nodes are zero.
// Throws InvalidInput unless `adjacency` is square, symmetric, 0/1 and has a zero diagonal.
Matrix normalized_adjacency(const Matrix& adjacency);

// [I, Â, Â², ..., Â^max_hops] by repeated multiplication.
std::vector<Matrix> adjacency_powers(const Matrix& normalized, int max_hops);

/// Undirected node network with cached normalized adjacency powers.
///
/// Immutable after construction. Edges are stored once as (a, b) with a < b,
/// sorted. Self-loops are rejected; repeated edges collapse.
class TopologyGraph {
public:
    TopologyGraph(int node_count, std::vector<NodeEdge> edges, int max_hops);

    static TopologyGraph from_adjacency(const Matrix& adjacency, int max_hops);

    // Edgeless graph on `node_count` nodes; with max_hops = 0 this is the
    // identity propagation used when topology is ignored.
    static TopologyGraph isolated(int node_count, int max_hops = 0);

    int node_count() const { return node_count_; }
    int max_hops() const { return static_cast<int>(powers_.size()) - 1; }
    const std::vector<NodeEdge>& edges() const { return edges_; }
    const Matrix& adjacency() const { return adjacency_; }
    const Matrix& normalized() const { return normalized_; }
    const Matrix& power(int hop) const { return powers_.at(static_cast<std::size_t>(hop)); }
    const std::vector<Matrix>& powers() const { return powers_; }
    double mean_degree() const;

    // Same edges, powers recomputed up to `max_hops`.
    TopologyGraph with_max_hops(int max_hops) const;

private:
    int node_count_;
    std::vector<NodeEdge> edges_;
    Matrix adjacency_;
    Matrix normalized_;
    std::vector<Matrix> powers_;
};

} // namespace thp
