#include "thp/topology.hpp"

#include "thp/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace thp {

Matrix normalized_adjacency(const Matrix& adjacency) {
    if (adjacency.rows() != adjacency.cols()) {
        throw InvalidInput("adjacency matrix must be square");
    }
    const Eigen::Index n = adjacency.rows();
    Eigen::VectorXd inv_sqrt_degree(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (adjacency(i, i) != 0.0) {
            throw InvalidInput("adjacency matrix has a self-loop at node " + std::to_string(i));
        }
        double degree = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            const double a = adjacency(i, j);
            if (a != 0.0 && a != 1.0) {
                throw InvalidInput("adjacency matrix is not binary at (" + std::to_string(i) + ", " +
                                   std::to_string(j) + ")");
            }
            if (a != adjacency(j, i)) {
                throw InvalidInput("adjacency matrix is not symmetric at (" + std::to_string(i) + ", " +
                                   std::to_string(j) + ")");
            }
            degree += a;
        }
        inv_sqrt_degree(i) = degree > 0.0 ? 1.0 / std::sqrt(degree) : 0.0;
    }
    return inv_sqrt_degree.asDiagonal() * adjacency * inv_sqrt_degree.asDiagonal();
}

std::vector<Matrix> adjacency_powers(const Matrix& normalized, int max_hops) {
    if (normalized.rows() != normalized.cols()) {
        throw InvalidInput("normalized adjacency must be square");
    }
    if (max_hops < 0) throw InvalidInput("max_hops must be non-negative");
    std::vector<Matrix> powers;
    powers.reserve(static_cast<std::size_t>(max_hops) + 1);
    powers.push_back(Matrix::Identity(normalized.rows(), normalized.cols()));
    for (int k = 1; k <= max_hops; ++k) {
        powers.push_back(powers.back() * normalized);
    }
    return powers;
}

TopologyGraph::TopologyGraph(int node_count, std::vector<NodeEdge> edges, int max_hops)
    : node_count_(node_count) {
    if (node_count <= 0) throw InvalidInput("topology node_count must be positive");
    for (auto& [a, b] : edges) {
        if (a < 0 || b < 0 || a >= node_count || b >= node_count) {
            throw InvalidInput("topology edge (" + std::to_string(a) + ", " + std::to_string(b) +
                               ") references a node outside [0, " + std::to_string(node_count) + ")");
        }
        if (a == b) throw InvalidInput("topology edge (" + std::to_string(a) + ", " + std::to_string(b) + ") is a self-loop");
        if (a > b) std::swap(a, b);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);

    adjacency_ = Matrix::Zero(node_count, node_count);
    for (const auto& [a, b] : edges_) {
        adjacency_(a, b) = 1.0;
        adjacency_(b, a) = 1.0;
    }
    normalized_ = normalized_adjacency(adjacency_);
    powers_ = adjacency_powers(normalized_, max_hops);
}

TopologyGraph TopologyGraph::from_adjacency(const Matrix& adjacency, int max_hops) {
    // Validate before extracting edges so asymmetric input is reported as such.
    normalized_adjacency(adjacency);
    std::vector<NodeEdge> edges;
    for (Eigen::Index i = 0; i < adjacency.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < adjacency.cols(); ++j) {
            if (adjacency(i, j) != 0.0) edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    }
    return TopologyGraph(static_cast<int>(adjacency.rows()), std::move(edges), max_hops);
}

TopologyGraph TopologyGraph::isolated(int node_count, int max_hops) {
    return TopologyGraph(node_count, {}, max_hops);
}

double TopologyGraph::mean_degree() const {
    return 2.0 * static_cast<double>(edges_.size()) / static_cast<double>(node_count_);
}

TopologyGraph TopologyGraph::with_max_hops(int max_hops) const {
    return TopologyGraph(node_count_, edges_, max_hops);
}

} // namespace thp
