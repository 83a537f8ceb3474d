#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dagtrace/errors.hpp"
#include "dagtrace/semiring.hpp"

namespace dagtrace {

// Vertices are identified with their topological index 1..T. 0 means "none".
using Vertex = std::int32_t;
inline constexpr Vertex kNoVertex = 0;

inline constexpr int kDefaultDeltaMax = 8;

struct EdgeSpec {
    Vertex from = kNoVertex;
    Vertex to = kNoVertex;
    Value weight;
};

struct SourceSpec {
    Vertex vertex = kNoVertex;
    Value init;
};

// Closed index interval [lo, hi] of the topological order.
struct Interval {
    Vertex lo = 0;
    Vertex hi = 0;

    Vertex midpoint() const { return lo + (hi - lo) / 2; } // == floor((lo+hi)/2)
    Vertex length() const { return hi - lo + 1; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

// Immutable DP dependency DAG in a fixed topological order, with adjacency
// in both directions, per-vertex maximum successor index (the O(1)
// garbage-collection test for forward passes) and the frontier width
// precomputed at construction. Safe to share across threads once built.
class DpDag {
public:
    // Validates and builds. Edges must satisfy from < to and be unique;
    // sources must be non-empty with in-degree 0 and finite init values;
    // sinks must be non-empty; all in-degrees must be <= delta_max.
    static DpDag build(Vertex vertex_count, std::vector<EdgeSpec> edges,
                       std::vector<SourceSpec> sources, std::vector<Vertex> sinks,
                       SemiringTag tag = SemiringTag::MaxPlus, int delta_max = kDefaultDeltaMax);

    Vertex vertex_count() const { return vertex_count_; }
    std::size_t edge_count() const { return in_vertex_.size(); }
    SemiringTag semiring_tag() const { return tag_; }
    int delta_max() const { return delta_max_; }

    // Predecessors of v in canonical edge order (ascending tail index);
    // weights are parallel to predecessors().
    std::span<const Vertex> predecessors(Vertex v) const {
        return {in_vertex_.data() + in_offset_[v], in_vertex_.data() + in_offset_[v + 1]};
    }
    std::span<const Value> predecessor_weights(Vertex v) const {
        return {in_weight_.data() + in_offset_[v], in_weight_.data() + in_offset_[v + 1]};
    }

    // Successors of v ascending; weights parallel.
    std::span<const Vertex> successors(Vertex v) const {
        return {out_vertex_.data() + out_offset_[v], out_vertex_.data() + out_offset_[v + 1]};
    }
    std::span<const Value> successor_weights(Vertex v) const {
        return {out_weight_.data() + out_offset_[v], out_weight_.data() + out_offset_[v + 1]};
    }

    // Largest successor index of v, or 0 if v has none.
    Vertex max_successor(Vertex v) const { return max_successor_[v]; }

    // Largest successor index of v that is <= hi, or 0 if none.
    Vertex max_successor_within(Vertex v, Vertex hi) const;

    bool is_source(Vertex v) const { return source_flag_[v] != 0; }
    Value source_init(Vertex v) const { return source_init_[v]; }
    std::span<const SourceSpec> sources() const { return sources_; }

    std::span<const Vertex> sinks() const { return sinks_; }
    bool is_sink(Vertex v) const;

    int max_in_degree() const { return max_in_degree_; }
    int max_out_degree() const { return max_out_degree_; }

    // Vertices <= ell that still have a successor beyond ell, ascending.
    // ell ranges over 0..T; anything else throws std::out_of_range.
    std::vector<Vertex> frontier_at(Vertex ell) const;

    // Maximum frontier size over all cut positions; the structural
    // parameter bounding every forward-pass buffer in this library.
    Vertex frontier_width() const { return frontier_width_; }

    // Vertices of [lo, min(mid, hi)] with a successor beyond mid, where mid
    // is the interval midpoint; ascending. Every optimal path crossing the
    // midpoint passes through one of them.
    std::vector<Vertex> middle_frontier(Interval interval) const;

    void check_vertex(Vertex v) const; // throws std::out_of_range

private:
    DpDag() = default;

    Vertex vertex_count_ = 0;
    SemiringTag tag_ = SemiringTag::MaxPlus;
    int delta_max_ = kDefaultDeltaMax;
    Vertex frontier_width_ = 0;
    int max_in_degree_ = 0;
    int max_out_degree_ = 0;

    // CSR adjacency, 1-based offsets (offset_[0] unused).
    std::vector<std::size_t> in_offset_;
    std::vector<Vertex> in_vertex_;
    std::vector<Value> in_weight_;
    std::vector<std::size_t> out_offset_;
    std::vector<Vertex> out_vertex_;
    std::vector<Value> out_weight_;

    std::vector<Vertex> max_successor_; // 1-based, 0 when no successor

    std::vector<SourceSpec> sources_;   // sorted by vertex
    std::vector<Value> source_init_;    // 1-based, bottom for non-sources
    std::vector<char> source_flag_;     // 1-based membership flags
    std::vector<Vertex> sinks_;         // sorted
};

} // namespace dagtrace
