#include "thp/metrics.hpp"

#include "thp/error.hpp"

#include <cmath>
#include <cstdio>

namespace thp {

StructureReport structure_metrics(const CausalGraph& predicted, const CausalGraph& truth) {
    if (predicted.type_count() != truth.type_count()) {
        throw InvalidInput("predicted graph has " + std::to_string(predicted.type_count()) +
                           " event types but the truth has " + std::to_string(truth.type_count()));
    }
    StructureReport r;
    for (const auto& e : predicted.edges()) {
        if (truth.edges().contains(e)) {
            ++r.true_positive;
        } else {
            ++r.false_positive;
        }
    }
    r.false_negative = static_cast<std::int64_t>(truth.edge_count()) - r.true_positive;
    if (predicted.edge_count() > 0) {
        r.precision = static_cast<double>(r.true_positive) / static_cast<double>(predicted.edge_count());
    }
    if (truth.edge_count() > 0) {
        r.recall = static_cast<double>(r.true_positive) / static_cast<double>(truth.edge_count());
    }
    if (r.precision + r.recall > 0.0) r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
    return r;
}

MaeResult alpha_mae(const ThpParams& estimated, const ThpParams& truth, int type_count, int max_hops) {
    if (type_count <= 0 || max_hops < 0) throw InvalidInput("alpha_mae needs positive |V| and non-negative K");
    auto at = [](const ThpParams& p, int cause, int effect, int hop) {
        const auto it = p.alpha.find({cause, effect});
        if (it == p.alpha.end() || static_cast<std::size_t>(hop) >= it->second.size()) return 0.0;
        return it->second[static_cast<std::size_t>(hop)];
    };
    double sum = 0.0;
    for (int cause = 0; cause < type_count; ++cause) {
        for (int effect = 0; effect < type_count; ++effect) {
            for (int k = 0; k <= max_hops; ++k) {
                sum += std::abs(at(estimated, cause, effect, k) - at(truth, cause, effect, k));
            }
        }
    }
    MaeResult r;
    double normalizer = static_cast<double>(type_count) * static_cast<double>(type_count);
    if (max_hops == 0) {
        r.normalizer_fallback = true;
    } else {
        normalizer *= max_hops;
    }
    r.value = sum / normalizer;
    return r;
}

std::string summary_line(const StructureReport& report) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "precision=%.4f recall=%.4f f1=%.4f tp=%lld fp=%lld fn=%lld", report.precision,
                  report.recall, report.f1, static_cast<long long>(report.true_positive),
                  static_cast<long long>(report.false_positive), static_cast<long long>(report.false_negative));
    std::string line = buf;
    if (report.alpha_mae) {
        std::snprintf(buf, sizeof buf, " alpha_mae=%.6f", *report.alpha_mae);
        line += buf;
    }
    return line;
}

} // namespace thp
