#include "test_support.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "dagtrace/rng.hpp"

namespace dagtrace::testing {

RawDag raw_of(const DpDag& dag) {
    RawDag raw;
    raw.vertex_count = dag.vertex_count();
    for (Vertex u = 1; u <= dag.vertex_count(); ++u) {
        const auto succ = dag.successors(u);
        const auto weights = dag.successor_weights(u);
        for (std::size_t i = 0; i < succ.size(); ++i) raw.edges.push_back({u, succ[i], weights[i]});
    }
    for (const SourceSpec& s : dag.sources()) raw.sources.push_back(s);
    for (Vertex s : dag.sinks()) raw.sinks.push_back(s);
    return raw;
}

std::vector<Vertex> brute_frontier(const RawDag& raw, Vertex ell) {
    std::vector<Vertex> frontier;
    for (Vertex v = 1; v <= ell; ++v) {
        bool crosses = false;
        for (const EdgeSpec& e : raw.edges) {
            if (e.from == v && e.to > ell) {
                crosses = true;
                break;
            }
        }
        if (crosses) frontier.push_back(v);
    }
    return frontier;
}

Vertex brute_frontier_width(const RawDag& raw) {
    Vertex width = 0;
    for (Vertex ell = 0; ell <= raw.vertex_count; ++ell) {
        width = std::max(width, static_cast<Vertex>(brute_frontier(raw, ell).size()));
    }
    return width;
}

namespace {

struct EnumState {
    const RawDag& raw;
    std::vector<EdgeSpec> sorted_edges; // canonical edge order; rank = index
    std::vector<std::vector<std::pair<Vertex, std::size_t>>> succ_by_rank; // (to, rank)

    explicit EnumState(const RawDag& r) : raw(r) {
        sorted_edges = r.edges;
        std::sort(sorted_edges.begin(), sorted_edges.end(),
                  [](const EdgeSpec& a, const EdgeSpec& b) {
                      return a.from != b.from ? a.from < b.from : a.to < b.to;
                  });
        succ_by_rank.resize(static_cast<std::size_t>(r.vertex_count) + 1);
        for (std::size_t rank = 0; rank < sorted_edges.size(); ++rank) {
            const EdgeSpec& e = sorted_edges[rank];
            succ_by_rank[static_cast<std::size_t>(e.from)].emplace_back(e.to, rank);
        }
    }
};

struct BestPath {
    bool found = false;
    std::int64_t value = 0;
    std::vector<Vertex> vertices;
    std::vector<std::size_t> edge_ranks;
};

// True when challenger (value, right-to-left edge ranks) beats incumbent.
bool beats(const BestPath& incumbent, std::int64_t value,
           const std::vector<std::size_t>& ranks) {
    if (!incumbent.found) return true;
    if (value != incumbent.value) return value > incumbent.value;
    const std::size_t n = std::min(ranks.size(), incumbent.edge_ranks.size());
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t a = ranks[ranks.size() - 1 - i];
        const std::size_t b = incumbent.edge_ranks[incumbent.edge_ranks.size() - 1 - i];
        if (a != b) return a < b;
    }
    return ranks.size() < incumbent.edge_ranks.size();
}

void enumerate(const EnumState& state, Vertex sink, Vertex at, std::int64_t value,
               std::vector<Vertex>& vertices, std::vector<std::size_t>& ranks, BestPath& best) {
    if (at == sink) {
        if (beats(best, value, ranks)) {
            best.found = true;
            best.value = value;
            best.vertices = vertices;
            best.edge_ranks = ranks;
        }
        return;
    }
    for (const auto& [to, rank] : state.succ_by_rank[static_cast<std::size_t>(at)]) {
        if (to > sink) continue;
        vertices.push_back(to);
        ranks.push_back(rank);
        enumerate(state, sink, to, value + state.sorted_edges[rank].weight.payload(), vertices,
                  ranks, best);
        ranks.pop_back();
        vertices.pop_back();
    }
}

} // namespace

std::optional<WitnessPath> brute_canonical_path(const RawDag& raw, Vertex sink) {
    const EnumState state(raw);
    BestPath best;
    for (const SourceSpec& s : raw.sources) {
        if (s.vertex > sink) continue;
        std::vector<Vertex> vertices{s.vertex};
        std::vector<std::size_t> ranks;
        enumerate(state, sink, s.vertex, s.init.payload(), vertices, ranks, best);
    }
    if (!best.found) return std::nullopt;
    return WitnessPath{best.vertices};
}

std::optional<std::int64_t> brute_best_value(const RawDag& raw, Vertex sink) {
    const auto path = brute_canonical_path(raw, sink);
    if (!path) return std::nullopt;
    const EnumState state(raw);
    // Recompute the value by folding the found path's edges.
    std::int64_t value = 0;
    for (const SourceSpec& s : raw.sources) {
        if (s.vertex == path->vertices.front()) value = s.init.payload();
    }
    for (std::size_t i = 1; i < path->vertices.size(); ++i) {
        for (const EdgeSpec& e : state.sorted_edges) {
            if (e.from == path->vertices[i - 1] && e.to == path->vertices[i]) {
                value += e.weight.payload();
            }
        }
    }
    return value;
}

void for_each_small_instance(int max_layers, int max_width, int subset_budget,
                             const std::function<void(const DpDag&)>& fn) {
    std::vector<std::vector<int>> shapes;
    std::function<void(std::vector<int>&)> grow = [&](std::vector<int>& shape) {
        if (!shape.empty()) shapes.push_back(shape);
        if (static_cast<int>(shape.size()) == max_layers) return;
        for (int w = 1; w <= max_width; ++w) {
            shape.push_back(w);
            grow(shape);
            shape.pop_back();
        }
    };
    std::vector<int> shape;
    grow(shape);

    for (const std::vector<int>& widths : shapes) {
        // Potential edges: complete bipartite between consecutive layers.
        std::vector<std::pair<Vertex, Vertex>> slots;
        Vertex base = 1;
        std::vector<Vertex> layer_base(widths.size());
        for (std::size_t l = 0; l < widths.size(); ++l) {
            layer_base[l] = base;
            base += widths[l];
        }
        const Vertex total = base - 1;
        for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
            for (int a = 0; a < widths[l]; ++a) {
                for (int b = 0; b < widths[l + 1]; ++b) {
                    slots.emplace_back(layer_base[l] + a, layer_base[l + 1] + b);
                }
            }
        }

        std::vector<std::uint64_t> masks;
        if (slots.size() <= 20 && (1u << slots.size()) <= static_cast<unsigned>(subset_budget)) {
            for (std::uint64_t mask = 0; mask < (1ULL << slots.size()); ++mask) {
                masks.push_back(mask);
            }
        } else {
            Rng rng(0x5eedULL + slots.size());
            for (int i = 0; i < subset_budget; ++i) {
                masks.push_back(rng.next() & ((1ULL << slots.size()) - 1));
            }
        }

        for (std::uint64_t mask : masks) {
            for (int scheme = 0; scheme < 2; ++scheme) {
                std::vector<EdgeSpec> edges;
                for (std::size_t i = 0; i < slots.size(); ++i) {
                    if (!(mask >> i & 1)) continue;
                    const auto [u, v] = slots[i];
                    const std::int64_t w = scheme == 0 ? 0 : (u * 7 + v * 13) % 5 - 2;
                    edges.push_back({u, v, Value::of(w)});
                }
                std::vector<SourceSpec> sources;
                for (int a = 0; a < widths[0]; ++a) {
                    const Vertex v = layer_base[0] + a;
                    sources.push_back({v, Value::of(scheme == 0 ? 0 : v % 3)});
                }
                std::vector<Vertex> sinks;
                for (int b = 0; b < widths.back(); ++b) sinks.push_back(layer_base.back() + b);
                fn(DpDag::build(total, std::move(edges), std::move(sources), std::move(sinks)));
            }
        }
    }
}

} // namespace dagtrace::testing
