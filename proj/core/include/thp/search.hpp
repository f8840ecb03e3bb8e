#pragma once

#include "thp/causal_graph.hpp"
#include "thp/em.hpp"
#include "thp/features.hpp"
#include "thp/likelihood.hpp"

#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace thp {

enum class MoveKind { kAdd, kDelete, kReverse };

struct Move {
    MoveKind kind = MoveKind::kAdd;
    int from = 0;
    int to = 0;

    friend bool operator==(const Move&, const Move&) = default;
};

std::string to_string(const Move& move);

struct Candidate {
    Move move;
    CausalGraph graph;
};

// Every graph one add/delete/reverse away from `graph`, ordered by (from, to) and then
// add < delete < reverse. Adds include self-loops; reversal skips self-loops and edges whose
// reverse already exists. With allow_cycles = false, candidates with a cycle are dropped.
std::vector<Candidate> vicinity(const CausalGraph& graph, bool allow_cycles = true);

struct SearchConfig {
    EmConfig em;
    EdgeParameterRule penalty = EdgeParameterRule::kHopsAtLeast1;
    bool allow_cycles = true;
    int threads = 1;
    std::ostream* progress = nullptr;  // one human-readable line per round
    std::ostream* trace = nullptr;     // one JSON object per round
};

/// Memoized per-type fits keyed by (type, parent set). Safe for concurrent use.
class ScoreTable {
public:
    ScoreTable(const FeatureCache& cache, SearchConfig config);

    // Fitted log-likelihood of `type` minus its share of the BIC penalty;
    // -infinity when EM fails for this parent set.
    double contribution(int type, const std::vector<int>& parents);

    // Fitted parameters behind `contribution`; throws DegenerateModel if EM failed.
    const TypeFit& fit(int type, const std::vector<int>& parents);

    std::size_t size() const;
    const FeatureCache& cache() const { return cache_; }
    const SearchConfig& config() const { return config_; }

private:
    struct Entry {
        TypeFit fit;
        double contribution = 0.0;
        std::string error;
    };
    const Entry& lookup(int type, const std::vector<int>& parents);

    const FeatureCache& cache_;
    SearchConfig config_;
    mutable std::mutex mutex_;
    std::map<std::vector<int>, std::unique_ptr<Entry>> entries_;
};

/// Current graph plus per-type cached score contributions.
class SearchState {
public:
    explicit SearchState(ScoreTable& table);

    const CausalGraph& current() const { return current_; }
    double score() const;
    double type_contribution(int type) const { return contributions_.at(static_cast<std::size_t>(type)); }

    // L_B of `candidate`, refitting only the types whose parent set differs from current().
    double score_candidate(const CausalGraph& candidate) const;

    void move_to(const CausalGraph& graph);

    // Fitted Θ for current().
    ThpParams params() const;

private:
    ScoreTable& table_;
    CausalGraph current_;
    std::vector<double> contributions_;
};

// L_B of `graph` from an independent EM fit of every type (no score table).
double full_refit_score(const CausalGraph& graph, const FeatureCache& cache, const SearchConfig& config);

struct SearchResult {
    CausalGraph graph{1};
    ThpParams params;
    double score = 0.0;
    int rounds = 0;
    int max_hops = 0;
    std::vector<double> trajectory;  // L_B after each round, starting with the empty graph
    std::vector<Move> moves;
};

// Greedy hill climbing from the empty graph until no candidate strictly improves L_B.
SearchResult hill_climb(const FeatureCache& cache, const SearchConfig& config);

// Runs hill_climb for every K in [0, max_hops] and keeps the best-scoring result.
SearchResult hill_climb_k_sweep(const DiscreteDataset& dataset, const TopologyGraph& topology,
                                const ExponentialKernel& kernel, int max_hops, const SearchConfig& config);

} // namespace thp
