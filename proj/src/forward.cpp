#include "dagtrace/forward.hpp"

#include <algorithm>
#include <string>

namespace dagtrace {

Boundary::Boundary(std::vector<Vertex> vertices, std::vector<Value> values)
    : vertices_(std::move(vertices)), values_(std::move(values)) {
    if (vertices_.size() != values_.size()) {
        throw ValidationError("boundary vertex/value lists differ in length");
    }
    if (!std::is_sorted(vertices_.begin(), vertices_.end())) {
        std::vector<std::size_t> order(vertices_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return vertices_[a] < vertices_[b]; });
        std::vector<Vertex> vs(vertices_.size());
        std::vector<Value> xs(values_.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            vs[i] = vertices_[order[i]];
            xs[i] = values_[order[i]];
        }
        vertices_ = std::move(vs);
        values_ = std::move(xs);
    }
    for (std::size_t i = 1; i < vertices_.size(); ++i) {
        if (vertices_[i - 1] == vertices_[i]) {
            throw ValidationError("duplicate boundary vertex " + std::to_string(vertices_[i]));
        }
    }
}

Boundary Boundary::sources_of(const DpDag& dag) {
    std::vector<Vertex> vs;
    std::vector<Value> xs;
    vs.reserve(dag.sources().size());
    xs.reserve(dag.sources().size());
    for (const SourceSpec& s : dag.sources()) {
        vs.push_back(s.vertex);
        xs.push_back(s.init);
    }
    return Boundary(std::move(vs), std::move(xs));
}

Boundary Boundary::singleton(Vertex v, Value value) { return Boundary({v}, {value}); }

bool Boundary::contains(Vertex v) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

Value Boundary::value_of(Vertex v) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end() || *it != v) return Value::bottom();
    return values_[static_cast<std::size_t>(it - vertices_.begin())];
}

FrontierBuffer::~FrontierBuffer() {
    if (meter_) meter_->sub(static_cast<std::int64_t>(entries_.size()));
}

void FrontierBuffer::insert(Vertex v, Value value, Vertex expiry) {
    entries_.emplace(v, value);
    expiry_heap_.emplace(expiry, v);
    peak_ = std::max(peak_, entries_.size());
    if (meter_) meter_->add(1);
}

const Value* FrontierBuffer::find(Vertex v) const {
    auto it = entries_.find(v);
    return it == entries_.end() ? nullptr : &it->second;
}

void FrontierBuffer::evict_up_to(Vertex position) {
    while (!expiry_heap_.empty() && expiry_heap_.top().first <= position) {
        const Vertex victim = expiry_heap_.top().second;
        expiry_heap_.pop();
        if (entries_.erase(victim) > 0 && meter_) meter_->sub(1);
    }
}

namespace {

// Shared core of every forward pass: scan [lo, hi] in topological order,
// seeding from `boundary`, recording values for `targets` (ascending) into
// `out`, keeping a rolling buffer whose entries expire at their last use.
// Returns the value at `stop_at` and ends the scan there when stop_at != 0.
Value run_pass(const DpDag& dag, Vertex lo, Vertex hi, const Boundary& boundary,
               std::span<const Vertex> targets, std::vector<Value>* out, Vertex stop_at,
               const PassContext& ctx) {
    if (ctx.pass_counter) ++*ctx.pass_counter;
    FrontierBuffer buffer(ctx.meter);

    // Boundary vertices before the window feed the scan as long as they
    // still have a successor inside it; the rest never matter. Boundary
    // vertices inside the window are seeded when the scan reaches them.
    for (Vertex bv : boundary.vertices()) {
        if (bv >= lo) break;
        const Vertex expiry = dag.max_successor_within(bv, hi);
        if (expiry >= lo) buffer.insert(bv, boundary.value_of(bv), expiry);
    }

    std::size_t next_target = 0;
    while (next_target < targets.size() && targets[next_target] < lo) ++next_target;

    Value result = Value::bottom();
    for (Vertex v = lo; v <= hi; ++v) {
        if (ctx.visit_counter) ++*ctx.visit_counter;
        Value x = Value::bottom();
        if (boundary.contains(v)) {
            x = boundary.value_of(v); // already initialized for this subproblem
        } else {
            const auto preds = dag.predecessors(v);
            const auto weights = dag.predecessor_weights(v);
            for (std::size_t i = 0; i < preds.size(); ++i) {
                const Vertex u = preds[i];
                const Value* xu = buffer.find(u);
                if (xu == nullptr) {
                    if (u >= lo) {
                        throw InternalError("in-scope predecessor " + std::to_string(u) +
                                            " missing from frontier buffer");
                    }
                    continue; // outside the window and not in the boundary: absent
                }
                x = combine(x, extend(*xu, weights[i]));
            }
        }
        buffer.insert(v, x, dag.max_successor_within(v, hi));
        if (ctx.assert_level == AssertLevel::Full && ctx.buffer_bound > 0 &&
            buffer.size() > static_cast<std::size_t>(ctx.buffer_bound)) {
            throw InternalError("frontier buffer held " + std::to_string(buffer.size()) +
                                " entries, bound " + std::to_string(ctx.buffer_bound));
        }
        if (next_target < targets.size() && targets[next_target] == v) {
            (*out)[next_target] = x;
            ++next_target;
        }
        if (v == stop_at) return x;
        buffer.evict_up_to(v);
    }
    return result;
}

PassContext with_bound(const DpDag& dag, PassContext ctx) {
    if (ctx.assert_level == AssertLevel::Full && ctx.buffer_bound == 0) {
        ctx.buffer_bound = dag.frontier_width() + 1;
    }
    return ctx;
}

} // namespace

Value global_forward(const DpDag& dag, Vertex target) {
    return global_forward(dag, target, PassContext{});
}

Value global_forward(const DpDag& dag, Vertex target, const PassContext& ctx) {
    dag.check_vertex(target);
    return run_pass(dag, 1, dag.vertex_count(), Boundary::sources_of(dag), {}, nullptr, target,
                    with_bound(dag, ctx));
}

std::vector<Value> local_prefix_values(const DpDag& dag, Vertex lo, Vertex mid,
                                       const Boundary& boundary, std::span<const Vertex> targets) {
    return local_prefix_values(dag, lo, mid, boundary, targets, PassContext{});
}

std::vector<Value> local_prefix_values(const DpDag& dag, Vertex lo, Vertex mid,
                                       const Boundary& boundary, std::span<const Vertex> targets,
                                       const PassContext& ctx) {
    dag.check_vertex(lo);
    dag.check_vertex(mid);
    if (lo > mid) throw std::out_of_range("prefix window is empty");
    if (!std::is_sorted(targets.begin(), targets.end())) {
        throw ValidationError("prefix targets must be sorted ascending");
    }
    for (Vertex t : targets) {
        if (t < lo || t > mid) {
            throw std::out_of_range("prefix target " + std::to_string(t) + " outside window");
        }
    }
    std::vector<Value> out(targets.size(), Value::bottom());
    run_pass(dag, lo, mid, boundary, targets, &out, kNoVertex, with_bound(dag, ctx));
    return out;
}

Value suffix_value(const DpDag& dag, Vertex source, Vertex interval_hi, Vertex sink) {
    return suffix_value(dag, source, interval_hi, sink, PassContext{});
}

Value suffix_value(const DpDag& dag, Vertex source, Vertex interval_hi, Vertex sink,
                   const PassContext& ctx) {
    dag.check_vertex(source);
    dag.check_vertex(interval_hi);
    dag.check_vertex(sink);
    if (source >= sink || sink > interval_hi) {
        throw std::out_of_range("suffix pass requires source < sink <= interval_hi");
    }
    // Paths from source to sink only visit indices <= sink, so the scan and
    // the garbage collection clamp the window there.
    return run_pass(dag, source + 1, sink, Boundary::singleton(source, Value::identity_mul()), {},
                    nullptr, sink, with_bound(dag, ctx));
}

} // namespace dagtrace
