#include "dagtrace/dag.hpp"

#include <algorithm>
#include <stdexcept>

namespace dagtrace {

namespace {

std::string vertex_str(Vertex v) { return std::to_string(v); }

} // namespace

void DpDag::check_vertex(Vertex v) const {
    if (v < 1 || v > vertex_count_) {
        throw std::out_of_range("vertex index " + vertex_str(v) + " outside 1.." +
                                vertex_str(vertex_count_));
    }
}

DpDag DpDag::build(Vertex vertex_count, std::vector<EdgeSpec> edges,
                   std::vector<SourceSpec> sources, std::vector<Vertex> sinks,
                   SemiringTag tag, int delta_max) {
    if (vertex_count < 1) throw ValidationError("vertex count must be positive");
    if (delta_max < 1) throw ValidationError("delta_max must be positive");

    for (const EdgeSpec& e : edges) {
        if (e.from < 1 || e.to < 1 || e.from > vertex_count || e.to > vertex_count) {
            throw ValidationError("edge (" + vertex_str(e.from) + "," + vertex_str(e.to) +
                                  ") out of range");
        }
        if (e.from >= e.to) {
            throw ValidationError("edge (" + vertex_str(e.from) + "," + vertex_str(e.to) +
                                  ") violates the topological order");
        }
        if (e.weight.is_bottom()) {
            throw ValidationError("edge (" + vertex_str(e.from) + "," + vertex_str(e.to) +
                                  ") has a bottom weight");
        }
    }

    // Canonical edge order: lexicographic (from, to). Predecessor lists come
    // out sorted by tail, so tie-breaking is plain iteration order.
    std::sort(edges.begin(), edges.end(), [](const EdgeSpec& a, const EdgeSpec& b) {
        return a.from != b.from ? a.from < b.from : a.to < b.to;
    });
    for (std::size_t i = 1; i < edges.size(); ++i) {
        if (edges[i - 1].from == edges[i].from && edges[i - 1].to == edges[i].to) {
            throw ValidationError("duplicate edge (" + vertex_str(edges[i].from) + "," +
                                  vertex_str(edges[i].to) + ")");
        }
    }

    DpDag dag;
    dag.vertex_count_ = vertex_count;
    dag.tag_ = tag;
    dag.delta_max_ = delta_max;

    const std::size_t n = static_cast<std::size_t>(vertex_count);
    std::vector<std::size_t> in_deg(n + 2, 0), out_deg(n + 2, 0);
    for (const EdgeSpec& e : edges) {
        ++in_deg[static_cast<std::size_t>(e.to)];
        ++out_deg[static_cast<std::size_t>(e.from)];
    }
    for (Vertex v = 1; v <= vertex_count; ++v) {
        const auto d = in_deg[static_cast<std::size_t>(v)];
        if (d > static_cast<std::size_t>(delta_max)) {
            throw ValidationError("vertex " + vertex_str(v) + " has in-degree " +
                                  std::to_string(d) + " > delta_max " + std::to_string(delta_max));
        }
        dag.max_in_degree_ = std::max(dag.max_in_degree_, static_cast<int>(d));
        dag.max_out_degree_ =
            std::max(dag.max_out_degree_, static_cast<int>(out_deg[static_cast<std::size_t>(v)]));
    }

    dag.in_offset_.assign(n + 2, 0);
    dag.out_offset_.assign(n + 2, 0);
    for (Vertex v = 1; v <= vertex_count; ++v) {
        dag.in_offset_[static_cast<std::size_t>(v) + 1] =
            dag.in_offset_[static_cast<std::size_t>(v)] + in_deg[static_cast<std::size_t>(v)];
        dag.out_offset_[static_cast<std::size_t>(v) + 1] =
            dag.out_offset_[static_cast<std::size_t>(v)] + out_deg[static_cast<std::size_t>(v)];
    }
    dag.in_vertex_.resize(edges.size());
    dag.in_weight_.resize(edges.size());
    dag.out_vertex_.resize(edges.size());
    dag.out_weight_.resize(edges.size());

    std::vector<std::size_t> in_pos(n + 2, 0), out_pos(n + 2, 0);
    for (const EdgeSpec& e : edges) {
        // Edges arrive sorted by (from, to): successor lists fill ascending,
        // and predecessor lists fill in canonical edge order because the
        // tail is the primary sort key.
        const auto u = static_cast<std::size_t>(e.from);
        const auto v = static_cast<std::size_t>(e.to);
        const std::size_t ip = dag.in_offset_[v] + in_pos[v]++;
        dag.in_vertex_[ip] = e.from;
        dag.in_weight_[ip] = e.weight;
        const std::size_t op = dag.out_offset_[u] + out_pos[u]++;
        dag.out_vertex_[op] = e.to;
        dag.out_weight_[op] = e.weight;
    }

    dag.max_successor_.assign(n + 1, kNoVertex);
    for (Vertex v = 1; v <= vertex_count; ++v) {
        const auto succ = dag.successors(v);
        dag.max_successor_[static_cast<std::size_t>(v)] = succ.empty() ? kNoVertex : succ.back();
    }

    if (sources.empty()) throw ValidationError("source set must be non-empty");
    std::sort(sources.begin(), sources.end(),
              [](const SourceSpec& a, const SourceSpec& b) { return a.vertex < b.vertex; });
    dag.source_init_.assign(n + 1, Value::bottom());
    dag.source_flag_.assign(n + 1, 0);
    for (std::size_t i = 0; i < sources.size(); ++i) {
        const SourceSpec& s = sources[i];
        if (s.vertex < 1 || s.vertex > vertex_count) {
            throw ValidationError("source vertex " + vertex_str(s.vertex) + " out of range");
        }
        if (i > 0 && sources[i - 1].vertex == s.vertex) {
            throw ValidationError("duplicate source vertex " + vertex_str(s.vertex));
        }
        if (in_deg[static_cast<std::size_t>(s.vertex)] != 0) {
            throw ValidationError("source vertex " + vertex_str(s.vertex) +
                                  " has incoming edges");
        }
        if (s.init.is_bottom()) {
            throw ValidationError("source vertex " + vertex_str(s.vertex) +
                                  " has a bottom init value");
        }
        dag.source_init_[static_cast<std::size_t>(s.vertex)] = s.init;
        dag.source_flag_[static_cast<std::size_t>(s.vertex)] = 1;
    }
    dag.sources_ = std::move(sources);

    if (sinks.empty()) throw ValidationError("sink set must be non-empty");
    std::sort(sinks.begin(), sinks.end());
    sinks.erase(std::unique(sinks.begin(), sinks.end()), sinks.end());
    for (Vertex s : sinks) {
        if (s < 1 || s > vertex_count) {
            throw ValidationError("sink vertex " + vertex_str(s) + " out of range");
        }
    }
    dag.sinks_ = std::move(sinks);

    // Frontier width by a sweep over cut positions: vertex v is live at cuts
    // [v, max_successor(v) - 1], so track insertions and expiries.
    std::vector<std::size_t> expiring(n + 1, 0);
    for (Vertex v = 1; v <= vertex_count; ++v) {
        const Vertex m = dag.max_successor_[static_cast<std::size_t>(v)];
        if (m != kNoVertex) ++expiring[static_cast<std::size_t>(m)];
    }
    Vertex live = 0, width = 0;
    for (Vertex ell = 1; ell <= vertex_count; ++ell) {
        if (dag.max_successor_[static_cast<std::size_t>(ell)] != kNoVertex) ++live;
        live -= static_cast<Vertex>(expiring[static_cast<std::size_t>(ell)]);
        width = std::max(width, live);
    }
    dag.frontier_width_ = width;

    return dag;
}

Vertex DpDag::max_successor_within(Vertex v, Vertex hi) const {
    const auto succ = successors(v);
    // Last successor <= hi; successor lists are ascending.
    auto it = std::upper_bound(succ.begin(), succ.end(), hi);
    return it == succ.begin() ? kNoVertex : *(it - 1);
}

bool DpDag::is_sink(Vertex v) const {
    return std::binary_search(sinks_.begin(), sinks_.end(), v);
}

std::vector<Vertex> DpDag::frontier_at(Vertex ell) const {
    if (ell < 0 || ell > vertex_count_) {
        throw std::out_of_range("frontier position " + vertex_str(ell) + " outside 0.." +
                                vertex_str(vertex_count_));
    }
    std::vector<Vertex> frontier;
    for (Vertex v = 1; v <= ell; ++v) {
        if (max_successor_[static_cast<std::size_t>(v)] > ell) frontier.push_back(v);
    }
    return frontier;
}

std::vector<Vertex> DpDag::middle_frontier(Interval interval) const {
    check_vertex(interval.lo);
    check_vertex(interval.hi);
    if (interval.lo > interval.hi) throw std::out_of_range("empty interval");
    const Vertex mid = interval.midpoint();
    std::vector<Vertex> frontier;
    for (Vertex v = interval.lo; v <= std::min(mid, interval.hi); ++v) {
        if (max_successor_[static_cast<std::size_t>(v)] > mid) frontier.push_back(v);
    }
    return frontier;
}

} // namespace dagtrace
