#include "dagtrace/traceback.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dagtrace {

Vertex default_base_case_threshold(Vertex vertex_count) {
    const double lg = std::log2(static_cast<double>(vertex_count));
    const auto threshold = static_cast<Vertex>(std::ceil(lg * lg - 1e-9));
    return std::max<Vertex>(1, threshold);
}

std::int64_t peak_live_words_bound(Vertex omega, Vertex vertex_count, Vertex base_case_threshold,
                                   std::int64_t root_boundary_words) {
    return kSpaceOmegaCoeff * omega + base_case_threshold +
           kSpaceFrameCoeff * kFrameWords * (ceil_log2(vertex_count) + 1) +
           3 * root_boundary_words + kSpaceConst;
}

std::tuple<Vertex, Value, Value> select_midpoint(std::span<const Vertex> candidates,
                                                 std::span<const Value> f,
                                                 std::span<const Value> g) {
    Value best = Value::bottom();
    std::size_t best_index = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const Value combined = extend(f[i], g[i]);
        // Strict improvement only: the first (smallest-index) maximizer wins.
        if (best < combined) {
            best = combined;
            best_index = i;
        }
    }
    if (best.is_bottom()) {
        throw NoWitnessError("no feasible crossing on the middle frontier");
    }
    return {candidates[best_index], f[best_index], g[best_index]};
}

namespace {

class Engine {
public:
    Engine(const DpDag& dag, TracebackConfig config, const std::function<void(Vertex)>& emit)
        : dag_(dag), config_(std::move(config)), emit_(emit) {
        if (config_.base_case_threshold <= 0) {
            config_.base_case_threshold = default_base_case_threshold(dag.vertex_count());
        }
    }

    RunMetrics run(Vertex sink) {
        dag_.check_vertex(sink);
        const Value sink_value = global_forward(dag_, sink, pass_context());
        if (sink_value.is_bottom()) {
            throw NoWitnessError("sink " + std::to_string(sink) + " is unreachable");
        }

        const Boundary root = Boundary::sources_of(dag_);
        metrics_.root_boundary_words = static_cast<std::int64_t>(root.size());
        meter_add(static_cast<std::int64_t>(root.size()));
        recurse({1, dag_.vertex_count()}, root, sink, sink_value, 1);
        meter_sub(static_cast<std::int64_t>(root.size()));

        metrics_.peak_live_words = meter_.peak();
        if (config_.metrics_enabled && config_.assert_level != AssertLevel::Off) {
            check_run_bounds();
        }
        return metrics_;
    }

private:
    PassContext pass_context() {
        PassContext ctx;
        ctx.assert_level = config_.assert_level;
        ctx.meter = config_.metrics_enabled ? &meter_ : nullptr;
        ctx.pass_counter = &metrics_.forward_pass_count;
        ctx.visit_counter = &metrics_.vertex_visit_count;
        return ctx;
    }

    void meter_add(std::int64_t words) {
        if (config_.metrics_enabled) meter_.add(words);
    }
    void meter_sub(std::int64_t words) {
        if (config_.metrics_enabled) meter_.sub(words);
    }

    // One traceback subproblem: emit the path segment (boundary vertex
    // included) from `boundary` to `target` whose internal vertices lie in
    // `interval` and whose value is `value`. The target <= midpoint case
    // halves the interval in place so stack frames exist only at genuinely
    // branching nodes; so does descending into the right half behind a
    // boundary candidate.
    void recurse(Interval interval, const Boundary& parent_boundary, Vertex target, Value value,
                 int depth) {
        metrics_.max_recursion_depth = std::max(metrics_.max_recursion_depth, depth);
        meter_add(kFrameWords);
        const Boundary* boundary = &parent_boundary;
        Boundary owned; // holds a replacement boundary taken up mid-loop
        bool owns_boundary = false;
        const auto leave_frame = [&] {
            if (owns_boundary) meter_sub(1);
            meter_sub(kFrameWords);
        };

        while (interval.length() > config_.base_case_threshold) {
            const Vertex mid = interval.midpoint();
            if (target <= mid) {
                interval.hi = mid;
                continue;
            }

            // Candidates for the last vertex at or before the cut on an
            // optimal path: the middle frontier (paths crossing the cut
            // from inside the window), plus boundary vertices that start
            // beyond the cut or jump it directly with one edge. Merged
            // ascending so the smallest-index tie rule spans both kinds.
            const std::vector<Vertex> mid_frontier = dag_.middle_frontier(interval);
            std::vector<Value> f = local_prefix_values(dag_, interval.lo, mid, *boundary,
                                                       mid_frontier, pass_context());
            meter_add(static_cast<std::int64_t>(f.size()));
            std::vector<Vertex> candidates;
            std::vector<Value> cf, cg;
            const auto add_candidate = [&](Vertex v, Value fv) {
                candidates.push_back(v);
                cf.push_back(fv);
                cg.push_back(Value::bottom()); // filled below
            };
            for (Vertex b : boundary->vertices()) {
                if (b >= interval.lo) break;
                if (dag_.max_successor_within(b, target) > mid) {
                    add_candidate(b, boundary->value_of(b));
                }
            }
            for (std::size_t i = 0; i < mid_frontier.size(); ++i) {
                add_candidate(mid_frontier[i], f[i]);
            }
            for (Vertex b : boundary->vertices()) {
                if (b > mid && b <= target) add_candidate(b, boundary->value_of(b));
            }
            // Continuation value of each candidate: best path to the target
            // whose internal vertices lie strictly beyond the cut, so the
            // candidate is the last at-or-before-cut vertex of the
            // decomposed path and the right subproblem can realize the
            // value verbatim. Passes run sequentially in candidate order,
            // one buffer at a time.
            meter_add(static_cast<std::int64_t>(2 * candidates.size()));
            for (std::size_t i = 0; i < candidates.size(); ++i) {
                const Vertex v = candidates[i];
                if (v == target) {
                    cg[i] = Value::identity_mul(); // the trivial one-vertex path
                } else {
                    const Boundary seed = Boundary::singleton(v, Value::identity_mul());
                    const std::vector<Vertex> t{target};
                    cg[i] = local_prefix_values(dag_, mid + 1, target, seed, t, pass_context())[0];
                }
            }

            const auto [chosen, f_star, g_star] = select_midpoint(candidates, cf, cg);
            if (config_.assert_level != AssertLevel::Off && extend(f_star, g_star) != value) {
                throw InternalError("value decomposition failed at midpoint " +
                                    std::to_string(mid) + ": best " +
                                    std::to_string(extend(f_star, g_star).payload()) +
                                    " != subproblem value " + std::to_string(value.payload()));
            }
            meter_sub(static_cast<std::int64_t>(2 * candidates.size() + f.size()));
            f.clear();

            if (chosen < interval.lo || chosen > mid) {
                // The optimal path never uses the left window: continue on
                // the right half with the chosen boundary vertex alone.
                if (chosen == target) {
                    emit_vertex(target);
                    leave_frame();
                    return;
                }
                owned = Boundary::singleton(chosen, f_star);
                boundary = &owned;
                if (!owns_boundary) {
                    owns_boundary = true;
                    meter_add(1);
                }
                interval.lo = mid + 1;
                value = extend(f_star, g_star);
                continue;
            }

            recurse({interval.lo, mid}, *boundary, chosen, f_star, depth + 1);

            const Boundary crossing_boundary = Boundary::singleton(chosen, Value::identity_mul());
            meter_add(1);
            recurse({mid + 1, interval.hi}, crossing_boundary, target, g_star, depth + 1);
            meter_sub(1);

            leave_frame();
            return;
        }

        base_case(interval, *boundary, target, value);
        leave_frame();
    }

    // Explicit local table over a short interval, then direct backtracking.
    // Ties between predecessor edges go to the first edge in canonical
    // order (strict improvement only).
    void base_case(Interval interval, const Boundary& boundary, Vertex target, Value value) {
        ++metrics_.forward_pass_count;
        const auto len = static_cast<std::size_t>(interval.length());
        std::vector<Value> table(len, Value::bottom());
        std::vector<Vertex> pred(len, kNoVertex);
        meter_add(static_cast<std::int64_t>(len));

        for (Vertex v = interval.lo; v <= interval.hi; ++v) {
            ++metrics_.vertex_visit_count;
            const auto slot = static_cast<std::size_t>(v - interval.lo);
            if (boundary.contains(v)) {
                table[slot] = boundary.value_of(v);
                continue;
            }
            const auto preds = dag_.predecessors(v);
            const auto weights = dag_.predecessor_weights(v);
            Value best = Value::bottom();
            Vertex best_pred = kNoVertex;
            for (std::size_t i = 0; i < preds.size(); ++i) {
                const Vertex u = preds[i];
                Value xu;
                if (u >= interval.lo) {
                    xu = table[static_cast<std::size_t>(u - interval.lo)];
                } else {
                    xu = boundary.value_of(u); // bottom when absent
                }
                const Value candidate = extend(xu, weights[i]);
                if (best < candidate) {
                    best = candidate;
                    best_pred = u;
                }
            }
            table[slot] = best;
            pred[slot] = best_pred;
        }

        if (config_.assert_level != AssertLevel::Off &&
            table[static_cast<std::size_t>(target - interval.lo)] != value) {
            throw InternalError(
                "base-case table value at " + std::to_string(target) + " is " +
                std::to_string(table[static_cast<std::size_t>(target - interval.lo)].payload()) +
                ", expected " + std::to_string(value.payload()));
        }

        std::vector<Vertex> segment;
        Vertex current = target;
        while (current != kNoVertex && !boundary.contains(current)) {
            segment.push_back(current);
            current = pred[static_cast<std::size_t>(current - interval.lo)];
        }
        if (current != kNoVertex) segment.push_back(current); // boundary vertex reached
        for (auto it = segment.rbegin(); it != segment.rend(); ++it) emit_vertex(*it);

        meter_sub(static_cast<std::int64_t>(len));
    }

    // Segments overlap by exactly their seam vertex (the left child ends at
    // the crossing vertex the right child starts from), so dropping a
    // repeat of the previously emitted vertex de-duplicates every seam.
    void emit_vertex(Vertex v) {
        if (v == last_emitted_) return;
        if (last_emitted_ != kNoVertex && v < last_emitted_) {
            throw InternalError("emitted vertices out of order: " + std::to_string(v) + " after " +
                                std::to_string(last_emitted_));
        }
        last_emitted_ = v;
        emit_(v);
    }

    void check_run_bounds() {
        const int depth_bound = ceil_log2(dag_.vertex_count()) + 2;
        if (metrics_.max_recursion_depth > depth_bound) {
            throw InternalError("recursion depth " + std::to_string(metrics_.max_recursion_depth) +
                                " exceeded bound " + std::to_string(depth_bound));
        }
        const std::int64_t space_bound =
            peak_live_words_bound(dag_.frontier_width(), dag_.vertex_count(),
                                  config_.base_case_threshold, metrics_.root_boundary_words);
        if (metrics_.peak_live_words > space_bound) {
            throw InternalError("peak live words " + std::to_string(metrics_.peak_live_words) +
                                " exceeded bound " + std::to_string(space_bound));
        }
    }

    const DpDag& dag_;
    TracebackConfig config_;
    const std::function<void(Vertex)>& emit_;
    SpaceMeter meter_;
    RunMetrics metrics_;
    Vertex last_emitted_ = kNoVertex;
};

} // namespace

RunMetrics traceback_stream(const DpDag& dag, Vertex sink, const TracebackConfig& config,
                            const std::function<void(Vertex)>& emit) {
    Engine engine(dag, config, emit);
    return engine.run(sink);
}

std::pair<WitnessPath, RunMetrics> traceback(const DpDag& dag, Vertex sink,
                                             const TracebackConfig& config) {
    WitnessPath path;
    RunMetrics metrics =
        traceback_stream(dag, sink, config, [&](Vertex v) { path.vertices.push_back(v); });
    return {std::move(path), metrics};
}

Value path_value(const DpDag& dag, const WitnessPath& path) {
    if (path.vertices.empty()) throw ValidationError("empty witness path");
    const Vertex first = path.vertices.front();
    dag.check_vertex(first);
    if (!dag.is_source(first)) {
        throw ValidationError("witness path starts at non-source " + std::to_string(first));
    }
    Value value = dag.source_init(first);
    for (std::size_t i = 1; i < path.vertices.size(); ++i) {
        const Vertex u = path.vertices[i - 1];
        const Vertex v = path.vertices[i];
        dag.check_vertex(v);
        if (v <= u) throw ValidationError("witness path is not strictly increasing");
        const auto preds = dag.predecessors(v);
        const auto weights = dag.predecessor_weights(v);
        auto it = std::lower_bound(preds.begin(), preds.end(), u);
        if (it == preds.end() || *it != u) {
            throw ValidationError("witness path uses missing edge (" + std::to_string(u) + "," +
                                  std::to_string(v) + ")");
        }
        value = extend(value, weights[static_cast<std::size_t>(it - preds.begin())]);
    }
    return value;
}

} // namespace dagtrace
