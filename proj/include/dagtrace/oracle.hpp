#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dagtrace/dag.hpp"
#include "dagtrace/metrics.hpp"
#include "dagtrace/traceback.hpp"

namespace dagtrace {

// Full DP table: global value and canonical predecessor for every vertex,
// 1-based. preds[v] == kNoVertex iff v is a source or unreachable. The
// predecessor respects canonical edge order under strict-improvement
// replacement, the same rule the traceback base case applies.
struct FullTable {
    std::vector<Value> values; // index 0 unused
    std::vector<Vertex> preds; // index 0 unused

    Value value(Vertex v) const { return values[static_cast<std::size_t>(v)]; }
    Vertex pred(Vertex v) const { return preds[static_cast<std::size_t>(v)]; }
};

// Naive full-table forward DP: the Theta(T)-space baseline.
FullTable oracle_solve(const DpDag& dag);

// Follows canonical predecessors from `sink` back to a source. This is the
// canonical path definition at base-case granularity; beyond the base-case
// threshold the canonical path is defined hierarchically (see
// oracle_canonical_path). Throws NoWitnessError when the sink value is
// bottom.
WitnessPath oracle_traceback(const DpDag& dag, const FullTable& table, Vertex sink);

// Reference implementation of the full canonical-path definition: the same
// interval bisection, middle-frontier maximization (smallest index wins
// ties) and base-case predecessor rule as the space-efficient engine, but
// every local evaluation is a naive dense table over its window and
// nothing is garbage-collected. Independent of the frontier-buffer code
// paths; Theta(T) space by construction. `base_case_threshold` must match
// the engine configuration being checked (0 selects the shared default).
WitnessPath oracle_canonical_path(const DpDag& dag, Vertex sink, Vertex base_case_threshold = 0,
                                  RunMetrics* metrics = nullptr);

// Metrics of a plain full-table solve, for space-contrast reporting:
// one value word plus one predecessor word per vertex.
RunMetrics oracle_solve_metrics(const DpDag& dag);

struct ComparisonReport {
    bool paths_equal = false;
    bool values_equal = false;
    bool no_witness_a = false;
    bool no_witness_b = false;
    std::int64_t first_divergence = -1; // index of the first differing vertex
    std::int64_t path_length_a = 0;
    std::int64_t path_length_b = 0;
    // Optimal values reached, min_finite-flagged invalid when no witness.
    Value value_a;
    Value value_b;
    RunMetrics metrics_a;
    RunMetrics metrics_b;
    double peak_words_ratio_b_over_a = 0.0;
    double vertex_visits_ratio_b_over_a = 0.0;

    bool equal() const { return paths_equal && values_equal; }
    std::string to_json() const;
};

ComparisonReport compare_runs(const WitnessPath& a, const WitnessPath& b, const RunMetrics& ma,
                              const RunMetrics& mb, Value value_a, Value value_b);

} // namespace dagtrace
