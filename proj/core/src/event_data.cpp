#include "thp/event_data.hpp"

#include "thp/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

namespace thp {

namespace {

std::string describe(const EventRecord& r, std::size_t index) {
    std::ostringstream os;
    os << "record #" << index << " (node=" << r.node << ", event_type=" << r.event_type
       << ", timestamp=" << r.timestamp << ")";
    return os.str();
}

} // namespace

DiscreteDataset::DiscreteDataset(int node_count, int type_count, double bin_width,
                                 std::int64_t horizon_bins, std::vector<CountCell> cells)
    : node_count_(node_count),
      type_count_(type_count),
      bin_width_(bin_width),
      horizon_bins_(horizon_bins),
      cells_(std::move(cells)),
      type_totals_(static_cast<std::size_t>(std::max(type_count, 0)), 0) {
    if (node_count <= 0 || type_count <= 0) {
        throw InvalidInput("dataset node and type counts must be positive");
    }
    if (!(bin_width > 0.0) || !std::isfinite(bin_width)) throw InvalidInput("bin width must be positive");
    if (horizon_bins <= 0) throw InvalidInput("horizon must contain at least one bin");

    std::sort(cells_.begin(), cells_.end(), [](const CountCell& a, const CountCell& b) {
        return std::tie(a.bin, a.node, a.type) < std::tie(b.bin, b.node, b.type);
    });
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        const auto& c = cells_[i];
        if (c.node < 0 || c.node >= node_count || c.type < 0 || c.type >= type_count || c.bin < 0 ||
            c.bin >= horizon_bins || c.count < 1) {
            throw InvalidInput("invalid count cell at position " + std::to_string(i));
        }
        if (i > 0 && std::tie(c.bin, c.node, c.type) ==
                         std::tie(cells_[i - 1].bin, cells_[i - 1].node, cells_[i - 1].type)) {
            throw InvalidInput("duplicate count cell at position " + std::to_string(i));
        }
        total_events_ += c.count;
        type_totals_[static_cast<std::size_t>(c.type)] += c.count;
    }
}

std::int64_t DiscreteDataset::count(int node, int type, std::int64_t bin) const {
    const CountCell key{node, type, bin, 0};
    auto it = std::lower_bound(cells_.begin(), cells_.end(), key, [](const CountCell& a, const CountCell& b) {
        return std::tie(a.bin, a.node, a.type) < std::tie(b.bin, b.node, b.type);
    });
    if (it != cells_.end() && it->bin == bin && it->node == node && it->type == type) return it->count;
    return 0;
}

DiscreteDataset discretize(std::span<const EventRecord> records, int node_count, int type_count,
                           double bin_width, double horizon_end) {
    if (!(bin_width > 0.0) || !std::isfinite(bin_width)) throw InvalidInput("bin width must be positive");
    if (!(horizon_end > 0.0) || !std::isfinite(horizon_end)) throw InvalidInput("horizon end must be positive");
    const auto horizon_bins = static_cast<std::int64_t>(std::ceil(horizon_end / bin_width));

    std::map<std::tuple<std::int64_t, int, int>, std::int64_t> counts;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (r.node < 0 || r.node >= node_count) {
            throw InvalidInput(describe(r, i) + ": node outside [0, " + std::to_string(node_count) + ")");
        }
        if (r.event_type < 0 || r.event_type >= type_count) {
            throw InvalidInput(describe(r, i) + ": event type outside [0, " + std::to_string(type_count) + ")");
        }
        if (!(r.timestamp >= 0.0) || !(r.timestamp < horizon_end)) {
            throw InvalidInput(describe(r, i) + ": timestamp outside [0, horizon_end)");
        }
        auto bin = static_cast<std::int64_t>(std::floor(r.timestamp / bin_width));
        // t < horizon_end can still round onto the last boundary.
        bin = std::min(bin, horizon_bins - 1);
        ++counts[{bin, r.node, r.event_type}];
    }

    std::vector<CountCell> cells;
    cells.reserve(counts.size());
    for (const auto& [key, count] : counts) {
        const auto& [bin, node, type] = key;
        cells.push_back({node, type, bin, count});
    }
    return DiscreteDataset(node_count, type_count, bin_width, horizon_bins, std::move(cells));
}

} // namespace thp
