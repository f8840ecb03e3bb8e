#pragma once

#include <compare>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace thp {

using TypeEdge = std::pair<int, int>;  // (cause, effect)

/// Directed graph over event types. Self-loops and cycles are allowed.
class CausalGraph {
public:
    explicit CausalGraph(int type_count);
    CausalGraph(int type_count, const std::vector<TypeEdge>& edges);

    int type_count() const { return type_count_; }
    const std::set<TypeEdge>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }

    bool has_edge(int cause, int effect) const { return edges_.contains({cause, effect}); }
    void add_edge(int cause, int effect);
    void remove_edge(int cause, int effect);

    // Sorted parent list PA_v.
    std::vector<int> parents(int effect) const;

    // False if any directed cycle exists; a self-loop counts as a cycle.
    bool is_acyclic() const;

    std::string to_string() const;

    friend bool operator==(const CausalGraph&, const CausalGraph&) = default;
    friend auto operator<=>(const CausalGraph&, const CausalGraph&) = default;

private:
    void check_type(int v) const;

    int type_count_;
    std::set<TypeEdge> edges_;
};

} // namespace thp
