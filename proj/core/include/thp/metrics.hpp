#pragma once

#include "thp/causal_graph.hpp"
#include "thp/likelihood.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace thp {

struct StructureReport {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::int64_t true_positive = 0;
    std::int64_t false_positive = 0;
    std::int64_t false_negative = 0;
    std::optional<double> alpha_mae;
    bool mae_normalizer_fallback = false;  // K = 0, so |V|² replaced K|V|²
};

// Directed-edge comparison. Precision is 0 for an empty prediction; F1 is 0 when P + R = 0.
StructureReport structure_metrics(const CausalGraph& predicted, const CausalGraph& truth);

struct MaeResult {
    double value = 0.0;
    bool normalizer_fallback = false;
};

// (1 / (K |V|²)) Σ_{v', v} Σ_{k=0..K} |α - α̂|, absent edges counting as zero.
// For K = 0 the normalizer is |V|² and `normalizer_fallback` is set.
MaeResult alpha_mae(const ThpParams& estimated, const ThpParams& truth, int type_count, int max_hops);

// "precision=0.8000 recall=0.6667 f1=0.7273 tp=4 fp=1 fn=2"
std::string summary_line(const StructureReport& report);

} // namespace thp
