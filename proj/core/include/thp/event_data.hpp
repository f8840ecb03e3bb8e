#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace thp {

struct EventRecord {
    int node = 0;
    int event_type = 0;
    double timestamp = 0.0;

    friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

// One occupied (node, type, bin) cell of the count tensor X.
struct CountCell {
    int node = 0;
    int type = 0;
    std::int64_t bin = 0;
    std::int64_t count = 0;

    friend bool operator==(const CountCell&, const CountCell&) = default;
};

/// Sparse discretized count tensor X[n, v, t].
///
/// Cells are sorted by (bin, node, type) and every stored count is >= 1.
class DiscreteDataset {
public:
    DiscreteDataset(int node_count, int type_count, double bin_width, std::int64_t horizon_bins,
                    std::vector<CountCell> cells);

    int node_count() const { return node_count_; }
    int type_count() const { return type_count_; }
    double bin_width() const { return bin_width_; }
    std::int64_t horizon_bins() const { return horizon_bins_; }
    std::int64_t total_events() const { return total_events_; }
    std::span<const CountCell> cells() const { return cells_; }

    std::int64_t count(int node, int type, std::int64_t bin) const;
    std::int64_t type_total(int type) const { return type_totals_.at(static_cast<std::size_t>(type)); }

private:
    int node_count_;
    int type_count_;
    double bin_width_;
    std::int64_t horizon_bins_;
    std::int64_t total_events_ = 0;
    std::vector<CountCell> cells_;
    std::vector<std::int64_t> type_totals_;
};

// Bins records with floor(t / bin_width) over ceil(horizon_end / bin_width) bins.
// Throws InvalidInput for non-positive widths, out-of-range ids, or timestamps outside [0, horizon_end).
DiscreteDataset discretize(std::span<const EventRecord> records, int node_count, int type_count,
                           double bin_width, double horizon_end);

} // namespace thp
