#pragma once

#include "thp/event_data.hpp"
#include "thp/kernels.hpp"
#include "thp/topology.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace thp {

// A (node, bin) pair at which at least one event of any type occurred.
struct FeatureCell {
    int node = 0;
    std::int64_t bin = 0;
};

// X[n, v, t] > 0 for a fixed type v, pointing at its FeatureCell.
struct TypeObservation {
    std::size_t cell = 0;
    std::int64_t count = 0;
};

/// Graph-time convolution features shared by every likelihood evaluation.
///
/// For cause type v' and hop k the feature at (n, t) is
///   G_k[v'](n, t) = Σ_n' Â^k(n', n) · Σ_{t' < t} κ(t - t') X[n', v', t'],
/// stored only at occupied cells, together with its sum over all |N|·|T| cells.
/// The cache does not depend on the causal graph or on parameters. Immutable.
class FeatureCache {
public:
    FeatureCache(const DiscreteDataset& dataset, const TopologyGraph& topology, const ExponentialKernel& kernel,
                 int max_hops);

    int node_count() const { return node_count_; }
    int type_count() const { return type_count_; }
    int max_hops() const { return max_hops_; }
    int hop_count() const { return max_hops_ + 1; }
    std::int64_t horizon_bins() const { return horizon_bins_; }
    double bin_width() const { return bin_width_; }
    double decay() const { return decay_; }
    std::int64_t total_events() const { return total_events_; }
    std::int64_t type_total(int type) const { return type_totals_.at(static_cast<std::size_t>(type)); }

    std::span<const FeatureCell> cells() const { return cells_; }
    std::optional<std::size_t> find_cell(int node, std::int64_t bin) const;

    std::span<const double> feature(int cause, int hop) const;
    double feature(int cause, int hop, std::size_t cell) const { return feature(cause, hop)[cell]; }
    double total(int cause, int hop) const {
        return totals_[static_cast<std::size_t>(cause * hop_count() + hop)];
    }

    std::span<const TypeObservation> observations(int type) const {
        return observations_.at(static_cast<std::size_t>(type));
    }

private:
    int node_count_;
    int type_count_;
    int max_hops_;
    std::int64_t horizon_bins_;
    double bin_width_;
    double decay_;
    std::int64_t total_events_;
    std::vector<std::int64_t> type_totals_;
    std::vector<FeatureCell> cells_;
    std::vector<std::vector<TypeObservation>> observations_;
    std::vector<double> features_;  // [(cause * hop_count + hop) * cells + cell]
    std::vector<double> totals_;    // [cause * hop_count + hop]
};

// Throws UnsupportedKernel unless `kernel` is exponential; InvalidInput on dimension mismatch
// or when max_hops exceeds the powers cached by `topology`.
FeatureCache build_features(const DiscreteDataset& dataset, const TopologyGraph& topology,
                            const DecayKernel& kernel, int max_hops);

} // namespace thp
