#pragma once

#include <cstdint>
#include <queue>
#include <span>
#include <unordered_map>
#include <vector>

#include "dagtrace/dag.hpp"
#include "dagtrace/metrics.hpp"

namespace dagtrace {

// Vertices with known values seeding a local forward pass, standing in for
// everything computed before the pass's interval. Vertices are kept sorted;
// values are parallel.
class Boundary {
public:
    Boundary() = default;
    Boundary(std::vector<Vertex> vertices, std::vector<Value> values);

    static Boundary sources_of(const DpDag& dag);
    static Boundary singleton(Vertex v, Value value);

    bool contains(Vertex v) const;
    Value value_of(Vertex v) const; // bottom when absent

    std::span<const Vertex> vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }

private:
    std::vector<Vertex> vertices_;
    std::vector<Value> values_;
};

// Rolling (vertex, value) map of one forward pass. Entries carry an expiry
// index (their last use as a predecessor within the pass scope) and are
// evicted as soon as the scan passes it, so the live size realizes the
// frontier-width bound.
class FrontierBuffer {
public:
    explicit FrontierBuffer(SpaceMeter* meter = nullptr) : meter_(meter) {}
    ~FrontierBuffer();

    void insert(Vertex v, Value value, Vertex expiry);
    const Value* find(Vertex v) const;
    void evict_up_to(Vertex position);

    std::size_t size() const { return entries_.size(); }
    std::size_t peak_size() const { return peak_; }

private:
    std::unordered_map<Vertex, Value> entries_;
    std::priority_queue<std::pair<Vertex, Vertex>, std::vector<std::pair<Vertex, Vertex>>,
                        std::greater<>>
        expiry_heap_; // (expiry, vertex), min first
    std::size_t peak_ = 0;
    SpaceMeter* meter_ = nullptr;
};

// Optional instrumentation shared by all passes.
struct PassContext {
    AssertLevel assert_level = AssertLevel::Off;
    SpaceMeter* meter = nullptr;
    std::int64_t* pass_counter = nullptr;
    std::int64_t* visit_counter = nullptr;
    Vertex buffer_bound = 0; // > 0: assert buffer size <= bound at every step (Full)
};

// Global value at `target` under the source-seeded recurrence, by a single
// forward sweep with a rolling frontier; stops as soon as `target` is
// processed. Unreachable targets yield bottom.
Value global_forward(const DpDag& dag, Vertex target);
Value global_forward(const DpDag& dag, Vertex target, const PassContext& ctx);

// Optimal boundary-to-target values for every target in `targets` (sorted
// ascending, all within [lo, mid]), where paths start at a boundary vertex
// and keep their internal vertices in [lo, mid]. Boundary vertices inside
// the window are seeded with their boundary value and skip the recurrence;
// predecessors outside the window and not in the boundary contribute
// nothing. Result is parallel to `targets`.
std::vector<Value> local_prefix_values(const DpDag& dag, Vertex lo, Vertex mid,
                                       const Boundary& boundary, std::span<const Vertex> targets);
std::vector<Value> local_prefix_values(const DpDag& dag, Vertex lo, Vertex mid,
                                       const Boundary& boundary, std::span<const Vertex> targets,
                                       const PassContext& ctx);

// Optimal value of a path source -> sink whose internal vertices lie in
// (source, interval_hi], with the source seeded at the multiplicative
// identity. Vertices outside that window are treated as absent.
Value suffix_value(const DpDag& dag, Vertex source, Vertex interval_hi, Vertex sink);
Value suffix_value(const DpDag& dag, Vertex source, Vertex interval_hi, Vertex sink,
                   const PassContext& ctx);

} // namespace dagtrace
