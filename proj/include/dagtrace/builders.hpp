#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dagtrace/dag.hpp"
#include "dagtrace/rng.hpp"

namespace dagtrace {

enum class GridOrder { RowMajor, ColumnMajor };

struct GridScoring {
    Value match = Value::of(1);
    Value mismatch = Value::of(0);
    Value gap = Value::of(0);

    static GridScoring lcs() { return GridScoring{}; }
};

// Pairwise alignment grid over strings a (length m) and b (length n):
// vertices are the (m+1) x (n+1) cells, edges are the gap/gap/substitution
// moves. With `band`, only cells within |i - j| <= band survive and edges
// leaving the band are clipped.
struct GridSpec {
    std::string a;
    std::string b;
    GridScoring scoring;
    GridOrder order = GridOrder::ColumnMajor;
    std::optional<int> band; // half-width of the diagonal band
};

DpDag build_grid(const GridSpec& spec);

// Topological index of cell (i, j) of an unbanded grid over strings of
// lengths m and n (test and tooling helper).
Vertex full_grid_vertex(int m, int n, GridOrder order, int i, int j);

// Chain of `length` vertices where vertex i depends on the previous
// min(step, i-1) vertices. Weights come from `weights` when given (one per
// edge, in canonical edge order) and are otherwise sampled from a small
// integer range with `seed`.
struct ChainSpec {
    Vertex length = 1;
    int step = 1;
    std::uint64_t seed = 0;
    std::vector<Value> weights; // optional explicit weights
};

DpDag build_chain(const ChainSpec& spec);

// Layered DAG: `layers` layers of `width` vertices, edges only between
// consecutive layers, each present with probability `density`. A repair
// pass gives every non-first-layer vertex at least one predecessor. First
// layer vertices are the sources, last layer vertices the sinks. Weights
// and source init values are small integers; everything is deterministic
// per seed.
struct LayeredSpec {
    int layers = 1;
    int width = 1;
    double density = 0.5;
    std::uint64_t seed = 0;
};

DpDag build_random_layered(const LayeredSpec& spec);

// Lower-bound gadget: a source fans out to `omega` lanes; lane l's outgoing
// edge carries a large negative penalty when pattern[l-1] is 0 and a bonus
// (omega - l) * kGadgetLaneStride when active, so the optimal path enters
// the smallest active lane. Each lane continues through `layer_count`
// binary stages to a shared sink; with encode_pattern the cheap side of
// stage k is chosen by pattern[k-1], making the witness path spell out the
// whole pattern.
struct GadgetSpec {
    int omega = 1;
    std::vector<bool> pattern;   // one bit per lane, at least one set
    int layer_count = 0;         // 0 selects omega stages
    bool encode_pattern = true;
};

inline constexpr std::int64_t kGadgetInactivePenalty = -1000000;
inline constexpr std::int64_t kGadgetLaneStride = 1024;

DpDag build_lb_gadget(const GadgetSpec& spec);

// Textbook two-row alignment DP over plain integers; an implementation
// independent of the DAG machinery, used to cross-check grid values.
std::int64_t two_row_alignment_score(const std::string& a, const std::string& b,
                                     const GridScoring& scoring);

// Banded variant of the same: cells outside |i - j| <= band are absent.
std::int64_t two_row_banded_score(const std::string& a, const std::string& b,
                                  const GridScoring& scoring, int band);

// Uniform random string over the first `alphabet` uppercase letters.
std::string random_string(std::size_t length, int alphabet, Rng& rng);

} // namespace dagtrace
