#include "dagtrace/oracle.hpp"

#include <algorithm>

#include "json.hpp"

namespace dagtrace {

FullTable oracle_solve(const DpDag& dag) {
    const std::size_t n = static_cast<std::size_t>(dag.vertex_count());
    FullTable table;
    table.values.assign(n + 1, Value::bottom());
    table.preds.assign(n + 1, kNoVertex);
    for (Vertex v = 1; v <= dag.vertex_count(); ++v) {
        const auto slot = static_cast<std::size_t>(v);
        if (dag.is_source(v)) {
            table.values[slot] = dag.source_init(v);
            continue;
        }
        const auto preds = dag.predecessors(v);
        const auto weights = dag.predecessor_weights(v);
        Value best = Value::bottom();
        Vertex best_pred = kNoVertex;
        for (std::size_t i = 0; i < preds.size(); ++i) {
            const Value candidate =
                extend(table.values[static_cast<std::size_t>(preds[i])], weights[i]);
            if (best < candidate) {
                best = candidate;
                best_pred = preds[i];
            }
        }
        table.values[slot] = best;
        table.preds[slot] = best_pred;
    }
    return table;
}

WitnessPath oracle_traceback(const DpDag& dag, const FullTable& table, Vertex sink) {
    dag.check_vertex(sink);
    if (table.value(sink).is_bottom()) {
        throw NoWitnessError("sink " + std::to_string(sink) + " is unreachable");
    }
    WitnessPath path;
    for (Vertex v = sink; v != kNoVertex; v = table.pred(v)) path.vertices.push_back(v);
    std::reverse(path.vertices.begin(), path.vertices.end());
    return path;
}

RunMetrics oracle_solve_metrics(const DpDag& dag) {
    RunMetrics metrics;
    metrics.peak_live_words = 2 * static_cast<std::int64_t>(dag.vertex_count());
    metrics.max_recursion_depth = 1;
    metrics.forward_pass_count = 1;
    metrics.vertex_visit_count = dag.vertex_count();
    metrics.root_boundary_words = static_cast<std::int64_t>(dag.sources().size());
    return metrics;
}

namespace {

// Reference-side local evaluation: a dense (value, predecessor) table over
// window [lo, hi], seeded from a (vertex, value) boundary list. Boundary
// vertices inside the window take their seeded value and skip the
// recurrence; predecessors that are neither in the window nor on the
// boundary are absent.
struct DenseWindow {
    Vertex lo, hi;
    std::vector<Value> values;
    std::vector<Vertex> preds;

    Value value(Vertex v) const { return values[static_cast<std::size_t>(v - lo)]; }
    Vertex pred(Vertex v) const { return preds[static_cast<std::size_t>(v - lo)]; }
};

struct BoundaryList {
    std::vector<std::pair<Vertex, Value>> entries; // sorted by vertex

    bool contains(Vertex v) const {
        return std::binary_search(
            entries.begin(), entries.end(), std::pair<Vertex, Value>{v, Value()},
            [](const auto& a, const auto& b) { return a.first < b.first; });
    }
    Value value_of(Vertex v) const {
        auto it = std::lower_bound(entries.begin(), entries.end(),
                                   std::pair<Vertex, Value>{v, Value()},
                                   [](const auto& a, const auto& b) { return a.first < b.first; });
        if (it == entries.end() || it->first != v) return Value::bottom();
        return it->second;
    }
};

DenseWindow solve_window(const DpDag& dag, Vertex lo, Vertex hi, const BoundaryList& boundary,
                         RunMetrics* metrics) {
    DenseWindow window{lo, hi, {}, {}};
    const auto len = static_cast<std::size_t>(hi - lo + 1);
    window.values.assign(len, Value::bottom());
    window.preds.assign(len, kNoVertex);
    if (metrics) {
        ++metrics->forward_pass_count;
        metrics->vertex_visit_count += static_cast<std::int64_t>(len);
    }
    for (Vertex v = lo; v <= hi; ++v) {
        const auto slot = static_cast<std::size_t>(v - lo);
        if (boundary.contains(v)) {
            window.values[slot] = boundary.value_of(v);
            continue;
        }
        const auto preds = dag.predecessors(v);
        const auto weights = dag.predecessor_weights(v);
        Value best = Value::bottom();
        Vertex best_pred = kNoVertex;
        for (std::size_t i = 0; i < preds.size(); ++i) {
            const Vertex u = preds[i];
            Value xu;
            if (u >= lo) {
                xu = window.values[static_cast<std::size_t>(u - lo)];
            } else {
                xu = boundary.value_of(u);
            }
            const Value candidate = extend(xu, weights[i]);
            if (best < candidate) {
                best = candidate;
                best_pred = u;
            }
        }
        window.values[slot] = best;
        window.preds[slot] = best_pred;
    }
    return window;
}

class ReferenceTraceback {
public:
    ReferenceTraceback(const DpDag& dag, Vertex threshold, RunMetrics* metrics)
        : dag_(dag), threshold_(threshold), metrics_(metrics) {}

    WitnessPath run(Vertex sink) {
        BoundaryList sources;
        for (const SourceSpec& s : dag_.sources()) sources.entries.emplace_back(s.vertex, s.init);
        const DenseWindow global = solve_window(dag_, 1, dag_.vertex_count(), sources, metrics_);
        live_words_ = 2 * static_cast<std::int64_t>(dag_.vertex_count());
        peak_words_ = std::max(peak_words_, live_words_);
        if (global.value(sink).is_bottom()) {
            throw NoWitnessError("sink " + std::to_string(sink) + " is unreachable");
        }
        WitnessPath path;
        recurse({1, dag_.vertex_count()}, sources, sink, global.value(sink), path, 1);
        if (metrics_) {
            metrics_->peak_live_words = peak_words_;
            metrics_->root_boundary_words = static_cast<std::int64_t>(sources.entries.size());
        }
        return path;
    }

private:
    void recurse(Interval interval, const BoundaryList& boundary, Vertex target, Value value,
                 WitnessPath& out, int depth) {
        if (metrics_) {
            metrics_->max_recursion_depth = std::max(metrics_->max_recursion_depth, depth);
        }
        if (interval.length() <= threshold_) {
            backtrack_window(interval, boundary, target, value, out);
            return;
        }
        const Vertex mid = interval.midpoint();
        if (target <= mid) {
            recurse({interval.lo, mid}, boundary, target, value, out, depth + 1);
            return;
        }

        // Same candidate set as the engine: the middle frontier, plus
        // boundary vertices that start beyond the cut or jump it directly,
        // merged in ascending vertex order.
        const std::vector<Vertex> frontier = dag_.middle_frontier(interval);
        const DenseWindow prefix = charge_window(interval.lo, mid, boundary);
        struct Candidate {
            Vertex vertex;
            Value f;
            bool from_boundary;
        };
        std::vector<Candidate> candidates;
        for (const auto& [b, bval] : boundary.entries) {
            if (b >= interval.lo) break;
            const auto succ = dag_.successors(b);
            const bool jumps = std::any_of(succ.begin(), succ.end(),
                                           [&](Vertex w) { return w > mid && w <= target; });
            if (jumps) candidates.push_back({b, bval, true});
        }
        for (Vertex v : frontier) candidates.push_back({v, prefix.value(v), false});
        for (const auto& [b, bval] : boundary.entries) {
            if (b > mid && b <= target) candidates.push_back({b, bval, true});
        }

        Value best = Value::bottom();
        const Candidate* chosen = nullptr;
        Value chosen_suffix = Value::bottom();
        for (const Candidate& candidate : candidates) {
            // Continuations live strictly beyond the cut, mirroring the
            // engine's decomposition exactly.
            Value suffix;
            if (candidate.vertex == target) {
                suffix = Value::identity_mul();
            } else {
                BoundaryList seed;
                seed.entries.emplace_back(candidate.vertex, Value::identity_mul());
                suffix = charge_window(mid + 1, target, seed).value(target);
            }
            const Value combined = extend(candidate.f, suffix);
            if (best < combined) {
                best = combined;
                chosen = &candidate;
                chosen_suffix = suffix;
            }
        }
        if (chosen == nullptr || best.is_bottom()) {
            throw NoWitnessError("no feasible crossing on the middle frontier");
        }
        if (best != value) {
            throw InternalError("reference decomposition mismatch at midpoint " +
                                std::to_string(mid));
        }

        if (chosen->from_boundary) {
            if (chosen->vertex == target) {
                if (out.vertices.empty() || out.vertices.back() != target) {
                    out.vertices.push_back(target);
                }
                return;
            }
            BoundaryList seed;
            seed.entries.emplace_back(chosen->vertex, chosen->f);
            recurse({mid + 1, interval.hi}, seed, target, best, out, depth + 1);
            return;
        }

        recurse({interval.lo, mid}, boundary, chosen->vertex, chosen->f, out, depth + 1);
        BoundaryList seed;
        seed.entries.emplace_back(chosen->vertex, Value::identity_mul());
        recurse({mid + 1, interval.hi}, seed, target, chosen_suffix, out, depth + 1);
    }

    void backtrack_window(Interval interval, const BoundaryList& boundary, Vertex target,
                          Value value, WitnessPath& out) {
        const DenseWindow window = charge_window(interval.lo, interval.hi, boundary);
        if (window.value(target) != value) {
            throw InternalError("reference base-case value mismatch at " + std::to_string(target));
        }
        std::vector<Vertex> segment;
        Vertex current = target;
        while (current != kNoVertex && !boundary.contains(current)) {
            segment.push_back(current);
            current = window.pred(current);
        }
        if (current != kNoVertex) segment.push_back(current);
        for (auto it = segment.rbegin(); it != segment.rend(); ++it) {
            if (!out.vertices.empty() && out.vertices.back() == *it) continue; // seam vertex
            out.vertices.push_back(*it);
        }
    }

    DenseWindow charge_window(Vertex lo, Vertex hi, const BoundaryList& boundary) {
        live_words_ += 2 * static_cast<std::int64_t>(hi - lo + 1);
        peak_words_ = std::max(peak_words_, live_words_);
        DenseWindow window = solve_window(dag_, lo, hi, boundary, metrics_);
        live_words_ -= 2 * static_cast<std::int64_t>(hi - lo + 1);
        return window;
    }

    const DpDag& dag_;
    Vertex threshold_;
    RunMetrics* metrics_;
    std::int64_t live_words_ = 0;
    std::int64_t peak_words_ = 0;
};

} // namespace

WitnessPath oracle_canonical_path(const DpDag& dag, Vertex sink, Vertex base_case_threshold,
                                  RunMetrics* metrics) {
    dag.check_vertex(sink);
    if (base_case_threshold <= 0) {
        base_case_threshold = default_base_case_threshold(dag.vertex_count());
    }
    ReferenceTraceback reference(dag, base_case_threshold, metrics);
    return reference.run(sink);
}

ComparisonReport compare_runs(const WitnessPath& a, const WitnessPath& b, const RunMetrics& ma,
                              const RunMetrics& mb, Value value_a, Value value_b) {
    ComparisonReport report;
    report.metrics_a = ma;
    report.metrics_b = mb;
    report.value_a = value_a;
    report.value_b = value_b;
    report.values_equal = value_a == value_b;
    report.path_length_a = static_cast<std::int64_t>(a.vertices.size());
    report.path_length_b = static_cast<std::int64_t>(b.vertices.size());
    report.paths_equal = a.vertices == b.vertices;
    if (!report.paths_equal) {
        const std::size_t shorter = std::min(a.vertices.size(), b.vertices.size());
        std::size_t i = 0;
        while (i < shorter && a.vertices[i] == b.vertices[i]) ++i;
        report.first_divergence = static_cast<std::int64_t>(i);
    }
    if (ma.peak_live_words > 0) {
        report.peak_words_ratio_b_over_a =
            static_cast<double>(mb.peak_live_words) / static_cast<double>(ma.peak_live_words);
    }
    if (ma.vertex_visit_count > 0) {
        report.vertex_visits_ratio_b_over_a =
            static_cast<double>(mb.vertex_visit_count) / static_cast<double>(ma.vertex_visit_count);
    }
    return report;
}

std::string ComparisonReport::to_json() const {
    nlohmann::ordered_json j;
    j["paths_equal"] = paths_equal;
    j["values_equal"] = values_equal;
    j["no_witness_a"] = no_witness_a;
    j["no_witness_b"] = no_witness_b;
    j["value_a"] = value_a.is_bottom() ? nlohmann::ordered_json(nullptr)
                                       : nlohmann::ordered_json(value_a.payload());
    j["value_b"] = value_b.is_bottom() ? nlohmann::ordered_json(nullptr)
                                       : nlohmann::ordered_json(value_b.payload());
    j["first_divergence"] = first_divergence;
    j["path_length_a"] = path_length_a;
    j["path_length_b"] = path_length_b;
    j["peak_live_words_a"] = metrics_a.peak_live_words;
    j["peak_live_words_b"] = metrics_b.peak_live_words;
    j["peak_words_ratio_b_over_a"] = peak_words_ratio_b_over_a;
    j["vertex_visits_a"] = metrics_a.vertex_visit_count;
    j["vertex_visits_b"] = metrics_b.vertex_visit_count;
    j["vertex_visits_ratio_b_over_a"] = vertex_visits_ratio_b_over_a;
    j["forward_passes_a"] = metrics_a.forward_pass_count;
    j["forward_passes_b"] = metrics_b.forward_pass_count;
    j["depth_a"] = metrics_a.max_recursion_depth;
    j["depth_b"] = metrics_b.max_recursion_depth;
    return j.dump();
}

} // namespace dagtrace
