#include "thp/causal_graph.hpp"

#include "thp/error.hpp"

#include <algorithm>
#include <sstream>

namespace thp {

CausalGraph::CausalGraph(int type_count) : type_count_(type_count) {
    if (type_count <= 0) throw InvalidInput("causal graph needs at least one event type");
}

CausalGraph::CausalGraph(int type_count, const std::vector<TypeEdge>& edges) : CausalGraph(type_count) {
    for (const auto& [from, to] : edges) add_edge(from, to);
}

void CausalGraph::check_type(int v) const {
    if (v < 0 || v >= type_count_) {
        throw InvalidInput("event type " + std::to_string(v) + " outside [0, " + std::to_string(type_count_) + ")");
    }
}

void CausalGraph::add_edge(int cause, int effect) {
    check_type(cause);
    check_type(effect);
    edges_.emplace(cause, effect);
}

void CausalGraph::remove_edge(int cause, int effect) { edges_.erase({cause, effect}); }

std::vector<int> CausalGraph::parents(int effect) const {
    std::vector<int> out;
    for (const auto& [from, to] : edges_) {
        if (to == effect) out.push_back(from);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool CausalGraph::is_acyclic() const {
    // Kahn's algorithm.
    std::vector<int> indegree(static_cast<std::size_t>(type_count_), 0);
    std::vector<std::vector<int>> children(static_cast<std::size_t>(type_count_));
    for (const auto& [from, to] : edges_) {
        if (from == to) return false;
        ++indegree[static_cast<std::size_t>(to)];
        children[static_cast<std::size_t>(from)].push_back(to);
    }
    std::vector<int> ready;
    for (int v = 0; v < type_count_; ++v) {
        if (indegree[static_cast<std::size_t>(v)] == 0) ready.push_back(v);
    }
    int visited = 0;
    while (!ready.empty()) {
        const int v = ready.back();
        ready.pop_back();
        ++visited;
        for (int c : children[static_cast<std::size_t>(v)]) {
            if (--indegree[static_cast<std::size_t>(c)] == 0) ready.push_back(c);
        }
    }
    return visited == type_count_;
}

std::string CausalGraph::to_string() const {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& [from, to] : edges_) {
        if (!first) os << ", ";
        os << from << "->" << to;
        first = false;
    }
    os << '}';
    return os.str();
}

} // namespace thp
