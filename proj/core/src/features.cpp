#include "thp/features.hpp"

#include "thp/error.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace thp {

namespace {

// Σ_{j=1}^{steps} exp(-rate * j), evaluated without cancellation.
double geometric_tail(double rate, std::int64_t steps) {
    if (steps <= 0) return 0.0;
    return std::exp(-rate) * std::expm1(-rate * static_cast<double>(steps)) / std::expm1(-rate);
}

} // namespace

FeatureCache::FeatureCache(const DiscreteDataset& dataset, const TopologyGraph& topology,
                           const ExponentialKernel& kernel, int max_hops)
    : node_count_(dataset.node_count()),
      type_count_(dataset.type_count()),
      max_hops_(max_hops),
      horizon_bins_(dataset.horizon_bins()),
      bin_width_(dataset.bin_width()),
      decay_(kernel.decay),
      total_events_(dataset.total_events()) {
    validate(DecayKernel{kernel});
    if (topology.node_count() != dataset.node_count()) {
        throw InvalidInput("topology has " + std::to_string(topology.node_count()) + " nodes but dataset has " +
                           std::to_string(dataset.node_count()));
    }
    if (max_hops < 0 || max_hops > topology.max_hops()) {
        throw InvalidInput("max_hops " + std::to_string(max_hops) + " outside the topology's cached range [0, " +
                           std::to_string(topology.max_hops()) + "]");
    }

    const auto types = static_cast<std::size_t>(type_count_);
    const auto hops = static_cast<std::size_t>(hop_count());
    type_totals_.resize(types);
    for (int v = 0; v < type_count_; ++v) type_totals_[static_cast<std::size_t>(v)] = dataset.type_total(v);

    // Occupied (node, bin) cells in (bin, node) order, matching the dataset ordering.
    const auto data = dataset.cells();
    observations_.resize(types);
    std::vector<std::size_t> cell_of(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto& c = data[i];
        if (cells_.empty() || cells_.back().bin != c.bin || cells_.back().node != c.node) {
            cells_.push_back({c.node, c.bin});
        }
        cell_of[i] = cells_.size() - 1;
        observations_[static_cast<std::size_t>(c.type)].push_back({cell_of[i], c.count});
    }

    const std::size_t cell_count = cells_.size();
    features_.assign(types * hops * cell_count, 0.0);
    totals_.assign(types * hops, 0.0);

    const double step = decay_ * bin_width_;
    const auto n = static_cast<Eigen::Index>(node_count_);
    std::vector<Eigen::VectorXd> row_sums;
    for (int k = 0; k <= max_hops_; ++k) row_sums.push_back(topology.power(k).rowwise().sum());

    Eigen::VectorXd summary(n);
    Eigen::VectorXd pending(n);
    Eigen::VectorXd tail_mass(n);
    for (int cause = 0; cause < type_count_; ++cause) {
        if (dataset.type_total(cause) == 0) continue;
        double* out = features_.data() + static_cast<std::size_t>(cause) * hops * cell_count;

        summary.setZero();
        pending.setZero();
        tail_mass.setZero();
        std::int64_t summary_bin = 0;
        std::size_t i = 0;
        while (i < data.size()) {
            const std::int64_t bin = data[i].bin;
            // Advance S from summary_bin to bin; no cause events lie strictly between them.
            if (bin != summary_bin) {
                summary = std::exp(-step * static_cast<double>(bin - summary_bin)) * (summary + pending);
                pending.setZero();
                summary_bin = bin;
            }
            const bool active = summary.any();
            std::size_t j = i;
            for (; j < data.size() && data[j].bin == bin; ++j) {
                const auto& c = data[j];
                if (active && (j == i || cell_of[j] != cell_of[j - 1])) {
                    for (int k = 0; k <= max_hops_; ++k) {
                        out[static_cast<std::size_t>(k) * cell_count + cell_of[j]] =
                            topology.power(k).col(c.node).dot(summary);
                    }
                }
                if (c.type == cause) {
                    pending(c.node) += static_cast<double>(c.count);
                    tail_mass(c.node) +=
                        static_cast<double>(c.count) * geometric_tail(step, horizon_bins_ - 1 - c.bin);
                }
            }
            i = j;
        }
        for (int k = 0; k <= max_hops_; ++k) {
            totals_[static_cast<std::size_t>(cause) * hops + static_cast<std::size_t>(k)] =
                row_sums[static_cast<std::size_t>(k)].dot(tail_mass);
        }
    }
}

std::optional<std::size_t> FeatureCache::find_cell(int node, std::int64_t bin) const {
    const auto it = std::lower_bound(cells_.begin(), cells_.end(), std::make_pair(bin, node),
                                     [](const FeatureCell& a, const std::pair<std::int64_t, int>& key) {
                                         return std::tie(a.bin, a.node) < std::tie(key.first, key.second);
                                     });
    if (it == cells_.end() || it->bin != bin || it->node != node) return std::nullopt;
    return static_cast<std::size_t>(it - cells_.begin());
}

std::span<const double> FeatureCache::feature(int cause, int hop) const {
    if (cause < 0 || cause >= type_count_ || hop < 0 || hop > max_hops_) {
        throw InvalidInput("feature index (cause=" + std::to_string(cause) + ", hop=" + std::to_string(hop) +
                           ") out of range");
    }
    const std::size_t cell_count = cells_.size();
    return {features_.data() + (static_cast<std::size_t>(cause) * static_cast<std::size_t>(hop_count()) +
                                static_cast<std::size_t>(hop)) * cell_count,
            cell_count};
}

FeatureCache build_features(const DiscreteDataset& dataset, const TopologyGraph& topology,
                            const DecayKernel& kernel, int max_hops) {
    const auto* exp_kernel = std::get_if<ExponentialKernel>(&kernel);
    if (exp_kernel == nullptr) {
        throw UnsupportedKernel("feature construction requires the exponential kernel, got " + kernel_name(kernel));
    }
    return FeatureCache(dataset, topology, *exp_kernel, max_hops);
}

} // namespace thp
