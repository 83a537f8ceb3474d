#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "dagtrace/dag.hpp"
#include "dagtrace/forward.hpp"
#include "dagtrace/metrics.hpp"

namespace dagtrace {

struct TracebackConfig {
    // Interval length at or below which the engine builds an explicit local
    // table and backtracks directly. 0 selects the default
    // ceil((log2 T)^2); the minimum is 1. The threshold is part of the
    // canonical-path definition: runs being compared must agree on it.
    Vertex base_case_threshold = 0;
    AssertLevel assert_level = AssertLevel::Decomposition;
    bool metrics_enabled = true;
};

// Canonical optimal source-to-sink path: strictly increasing vertex
// indices, consecutive vertices joined by edges, first vertex a source.
struct WitnessPath {
    std::vector<Vertex> vertices;

    friend bool operator==(const WitnessPath&, const WitnessPath&) = default;
};

// Default base-case threshold for a DAG of T vertices.
Vertex default_base_case_threshold(Vertex vertex_count);

// Documented bound asserted against peak_live_words on instrumented runs:
//   kSpaceOmegaCoeff * omega
// + base_case_threshold
// + kSpaceFrameCoeff * kFrameWords * (ceil_log2(T) + 1)
// + 3 * root_boundary_words
// + kSpaceConst
inline constexpr std::int64_t kSpaceOmegaCoeff = 4;
inline constexpr std::int64_t kSpaceFrameCoeff = 3;
inline constexpr std::int64_t kSpaceConst = 8;
std::int64_t peak_live_words_bound(Vertex omega, Vertex vertex_count, Vertex base_case_threshold,
                                   std::int64_t root_boundary_words);

// Reconstructs the canonical optimal witness path ending at `sink` by
// divide-and-conquer over the topological order: bisect the interval, meet
// prefix and suffix values on the middle frontier, pick the canonical
// crossing vertex, and recurse, with every evaluation done by forward
// passes over rolling frontier buffers. Peak working storage is
// O(omega log T + polylog T) words instead of the Theta(T) a stored-
// back-pointer traceback needs.
//
// Streaming variant: emits path vertices left to right as segments
// complete, never holding the whole path. Throws NoWitnessError when the
// sink is unreachable.
RunMetrics traceback_stream(const DpDag& dag, Vertex sink, const TracebackConfig& config,
                            const std::function<void(Vertex)>& emit);

// Collecting convenience wrapper.
std::pair<WitnessPath, RunMetrics> traceback(const DpDag& dag, Vertex sink,
                                             const TracebackConfig& config = {});

// Smallest-index candidate maximizing f (x) g, with its f and g values.
// Candidates ascending; f and g parallel to candidates. Throws
// NoWitnessError when every combination is bottom.
std::tuple<Vertex, Value, Value> select_midpoint(std::span<const Vertex> candidates,
                                                 std::span<const Value> f,
                                                 std::span<const Value> g);

// Folds the path's edge weights (seeded with the first vertex's source
// init) and checks adjacency; validation failures throw ValidationError.
Value path_value(const DpDag& dag, const WitnessPath& path);

} // namespace dagtrace
