#include "thp/search.hpp"

#include "thp/error.hpp"

#include <atomic>
#include <cmath>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

namespace thp {

namespace {

constexpr double kMinusInfinity = -std::numeric_limits<double>::infinity();

const char* kind_name(MoveKind kind) {
    switch (kind) {
        case MoveKind::kAdd: return "add";
        case MoveKind::kDelete: return "delete";
        case MoveKind::kReverse: return "reverse";
    }
    return "?";
}

} // namespace

std::string to_string(const Move& move) {
    return std::string(kind_name(move.kind)) + " " + std::to_string(move.from) + "->" + std::to_string(move.to);
}

std::vector<Candidate> vicinity(const CausalGraph& graph, bool allow_cycles) {
    std::vector<Candidate> out;
    std::set<CausalGraph> seen;
    auto push = [&](Move move, CausalGraph g) {
        if (!allow_cycles && !g.is_acyclic()) return;
        if (!seen.insert(g).second) return;
        out.push_back({move, std::move(g)});
    };
    const int types = graph.type_count();
    for (int from = 0; from < types; ++from) {
        for (int to = 0; to < types; ++to) {
            if (!graph.has_edge(from, to)) {
                CausalGraph g = graph;
                g.add_edge(from, to);
                push({MoveKind::kAdd, from, to}, std::move(g));
                continue;
            }
            CausalGraph removed = graph;
            removed.remove_edge(from, to);
            if (from != to && !graph.has_edge(to, from)) {
                CausalGraph reversed = removed;
                reversed.add_edge(to, from);
                push({MoveKind::kDelete, from, to}, std::move(removed));
                push({MoveKind::kReverse, from, to}, std::move(reversed));
            } else {
                push({MoveKind::kDelete, from, to}, std::move(removed));
            }
        }
    }
    return out;
}

ScoreTable::ScoreTable(const FeatureCache& cache, SearchConfig config) : cache_(cache), config_(std::move(config)) {
    config_.em.validate();
}

const ScoreTable::Entry& ScoreTable::lookup(int type, const std::vector<int>& parents) {
    std::vector<int> key;
    key.reserve(parents.size() + 1);
    key.push_back(type);
    key.insert(key.end(), parents.begin(), parents.end());
    {
        std::lock_guard lock(mutex_);
        if (auto it = entries_.find(key); it != entries_.end()) return *it->second;
    }
    auto entry = std::make_unique<Entry>();
    try {
        entry->fit = fit_type(cache_, type, parents, config_.em);
        entry->contribution = entry->fit.log_likelihood -
                              type_bic_penalty(parents.size(), cache_.max_hops(), cache_.total_events(),
                                               config_.penalty);
        if (std::isnan(entry->contribution)) entry->contribution = kMinusInfinity;
    } catch (const DegenerateModel& e) {
        entry->contribution = kMinusInfinity;
        entry->error = e.what();
    }
    std::lock_guard lock(mutex_);
    // A concurrent worker may have inserted the same key; fits are deterministic so either copy is fine.
    auto [it, inserted] = entries_.try_emplace(std::move(key), std::move(entry));
    return *it->second;
}

double ScoreTable::contribution(int type, const std::vector<int>& parents) {
    return lookup(type, parents).contribution;
}

const TypeFit& ScoreTable::fit(int type, const std::vector<int>& parents) {
    const Entry& e = lookup(type, parents);
    if (!e.error.empty()) throw DegenerateModel(e.error);
    return e.fit;
}

std::size_t ScoreTable::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

SearchState::SearchState(ScoreTable& table) : table_(table), current_(table.cache().type_count()) {
    const int types = current_.type_count();
    contributions_.resize(static_cast<std::size_t>(types));
    for (int v = 0; v < types; ++v) contributions_[static_cast<std::size_t>(v)] = table_.contribution(v, {});
}

double SearchState::score() const {
    double total = 0.0;
    for (double c : contributions_) total += c;
    return total;
}

double SearchState::score_candidate(const CausalGraph& candidate) const {
    if (candidate.type_count() != current_.type_count()) throw InvalidInput("candidate has a different type count");
    double total = 0.0;
    for (int v = 0; v < candidate.type_count(); ++v) {
        auto parents = candidate.parents(v);
        total += parents == current_.parents(v) ? contributions_[static_cast<std::size_t>(v)]
                                                : table_.contribution(v, parents);
    }
    return total;
}

void SearchState::move_to(const CausalGraph& graph) {
    if (graph.type_count() != current_.type_count()) throw InvalidInput("graph has a different type count");
    for (int v = 0; v < graph.type_count(); ++v) {
        contributions_[static_cast<std::size_t>(v)] = table_.contribution(v, graph.parents(v));
    }
    current_ = graph;
}

ThpParams SearchState::params() const {
    ThpParams params = ThpParams::zeros(current_, table_.cache().max_hops());
    for (int v = 0; v < current_.type_count(); ++v) {
        assign_type_params(params, table_.fit(v, current_.parents(v)).params);
    }
    return params;
}

double full_refit_score(const CausalGraph& graph, const FeatureCache& cache, const SearchConfig& config) {
    try {
        const FitResult result = fit(graph, cache, config.em);
        return bic_score(result.log_likelihood, graph, cache.max_hops(), cache.total_events(), config.penalty);
    } catch (const DegenerateModel&) {
        return kMinusInfinity;
    }
}

namespace {

std::vector<double> score_all(const SearchState& state, const std::vector<Candidate>& candidates, int threads) {
    std::vector<double> scores(candidates.size(), kMinusInfinity);
    const auto workers = static_cast<std::size_t>(std::max(threads, 1));
    if (workers == 1 || candidates.size() < 2) {
        for (std::size_t i = 0; i < candidates.size(); ++i) scores[i] = state.score_candidate(candidates[i].graph);
        return scores;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(workers, candidates.size()); ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < candidates.size(); i = next++) {
                scores[i] = state.score_candidate(candidates[i].graph);
            }
        });
    }
    pool.clear();
    return scores;
}

} // namespace

SearchResult hill_climb(const FeatureCache& cache, const SearchConfig& config) {
    ScoreTable table(cache, config);
    SearchState state(table);
    SearchResult result{.graph = state.current(), .params = {}, .score = state.score(), .rounds = 0,
                        .max_hops = cache.max_hops(), .trajectory = {state.score()}, .moves = {}};

    while (true) {
        const auto candidates = vicinity(state.current(), config.allow_cycles);
        const auto scores = score_all(state, candidates, config.threads);
        std::size_t best = candidates.size();
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (best == candidates.size() ? scores[i] > kMinusInfinity : scores[i] > scores[best]) best = i;
        }
        if (best == candidates.size() || !(scores[best] > state.score())) break;

        state.move_to(candidates[best].graph);
        ++result.rounds;
        result.moves.push_back(candidates[best].move);
        result.trajectory.push_back(state.score());
        if (config.progress != nullptr) {
            *config.progress << "round " << result.rounds << ": " << to_string(candidates[best].move)
                             << "  L_B=" << std::setprecision(10) << state.score() << '\n';
        }
        if (config.trace != nullptr) {
            std::ostringstream line;
            line << std::setprecision(17) << "{\"round\":" << result.rounds << ",\"move\":\""
                 << kind_name(candidates[best].move.kind) << "\",\"from\":" << candidates[best].move.from
                 << ",\"to\":" << candidates[best].move.to << ",\"score\":" << state.score()
                 << ",\"candidates\":" << candidates.size() << "}\n";
            *config.trace << line.str();
        }
    }

    result.graph = state.current();
    result.score = state.score();
    result.params = state.params();
    return result;
}

SearchResult hill_climb_k_sweep(const DiscreteDataset& dataset, const TopologyGraph& topology,
                                const ExponentialKernel& kernel, int max_hops, const SearchConfig& config) {
    if (max_hops < 0) throw InvalidInput("max_hops must be non-negative");
    std::optional<SearchResult> best;
    const TopologyGraph powered = topology.max_hops() >= max_hops ? topology : topology.with_max_hops(max_hops);
    for (int k = 0; k <= max_hops; ++k) {
        const FeatureCache cache(dataset, powered, kernel, k);
        SearchResult r = hill_climb(cache, config);
        if (config.progress != nullptr) {
            *config.progress << "K=" << k << " final L_B=" << std::setprecision(10) << r.score << '\n';
        }
        if (!best || r.score > best->score) best = std::move(r);
    }
    return std::move(*best);
}

} // namespace thp
