#include "dagtrace/builders.hpp"

#include <algorithm>
#include <cstdlib>

namespace dagtrace {

namespace {

// Cell enumeration shared by both grid shapes. Cells outside the band are
// skipped entirely, so vertex indices stay dense and T = Theta(B * N).
class GridLayout {
public:
    GridLayout(int m, int n, GridOrder order, std::optional<int> band)
        : m_(m), n_(n), order_(order), band_(band) {
        index_.assign(static_cast<std::size_t>(m + 1) * static_cast<std::size_t>(n + 1),
                      kNoVertex);
        Vertex next = 1;
        if (order == GridOrder::ColumnMajor) {
            for (int j = 0; j <= n; ++j)
                for (int i = 0; i <= m; ++i)
                    if (in_band(i, j)) index_[flat(i, j)] = next++;
        } else {
            for (int i = 0; i <= m; ++i)
                for (int j = 0; j <= n; ++j)
                    if (in_band(i, j)) index_[flat(i, j)] = next++;
        }
        count_ = next - 1;
    }

    bool in_band(int i, int j) const { return !band_ || std::abs(i - j) <= *band_; }
    Vertex vertex(int i, int j) const {
        if (i < 0 || j < 0 || i > m_ || j > n_ || !in_band(i, j)) return kNoVertex;
        return index_[flat(i, j)];
    }
    Vertex count() const { return count_; }

private:
    std::size_t flat(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_ + 1) +
               static_cast<std::size_t>(j);
    }

    int m_, n_;
    GridOrder order_;
    std::optional<int> band_;
    std::vector<Vertex> index_;
    Vertex count_ = 0;
};

} // namespace

DpDag build_grid(const GridSpec& spec) {
    const int m = static_cast<int>(spec.a.size());
    const int n = static_cast<int>(spec.b.size());
    if (spec.scoring.match.is_bottom() || spec.scoring.mismatch.is_bottom() ||
        spec.scoring.gap.is_bottom()) {
        throw ValidationError("grid scoring values must be finite");
    }
    if (spec.band) {
        if (*spec.band < 0) throw ValidationError("band half-width must be >= 0");
        if (std::abs(m - n) > *spec.band) {
            throw ValidationError("band of half-width " + std::to_string(*spec.band) +
                                  " cannot connect (0,0) to (" + std::to_string(m) + "," +
                                  std::to_string(n) + ")");
        }
    }

    const GridLayout layout(m, n, spec.order, spec.band);
    std::vector<EdgeSpec> edges;
    edges.reserve(static_cast<std::size_t>(layout.count()) * 3);
    for (int i = 0; i <= m; ++i) {
        for (int j = 0; j <= n; ++j) {
            const Vertex v = layout.vertex(i, j);
            if (v == kNoVertex) continue;
            if (const Vertex up = layout.vertex(i - 1, j); up != kNoVertex) {
                edges.push_back({up, v, spec.scoring.gap});
            }
            if (const Vertex left = layout.vertex(i, j - 1); left != kNoVertex) {
                edges.push_back({left, v, spec.scoring.gap});
            }
            if (const Vertex diag = layout.vertex(i - 1, j - 1); diag != kNoVertex) {
                const bool is_match = spec.a[static_cast<std::size_t>(i - 1)] ==
                                      spec.b[static_cast<std::size_t>(j - 1)];
                edges.push_back({diag, v, is_match ? spec.scoring.match : spec.scoring.mismatch});
            }
        }
    }

    const Vertex source = layout.vertex(0, 0);
    const Vertex sink = layout.vertex(m, n);
    return DpDag::build(layout.count(), std::move(edges), {{source, Value::of(0)}}, {sink},
                        spec.scoring.match == GridScoring::lcs().match &&
                                spec.scoring.mismatch == GridScoring::lcs().mismatch &&
                                spec.scoring.gap == GridScoring::lcs().gap
                            ? SemiringTag::Lcs
                            : SemiringTag::MaxPlus,
                        3);
}

Vertex full_grid_vertex(int m, int n, GridOrder order, int i, int j) {
    if (i < 0 || j < 0 || i > m || j > n) throw std::out_of_range("grid cell out of range");
    if (order == GridOrder::ColumnMajor) return static_cast<Vertex>(j * (m + 1) + i + 1);
    return static_cast<Vertex>(i * (n + 1) + j + 1);
}

DpDag build_chain(const ChainSpec& spec) {
    if (spec.length < 1) throw ValidationError("chain length must be >= 1");
    if (spec.step < 1) throw ValidationError("chain step must be >= 1");
    if (spec.length > 1 && spec.step >= spec.length) {
        throw ValidationError("chain step must be < length");
    }

    std::vector<EdgeSpec> edges;
    for (Vertex v = 2; v <= spec.length; ++v) {
        for (Vertex u = std::max<Vertex>(1, v - spec.step); u < v; ++u) {
            edges.push_back({u, v, Value::of(0)});
        }
    }
    // Canonical edge order is (u, v); regenerate weights in that order so
    // explicit weight lists line up with it.
    std::sort(edges.begin(), edges.end(), [](const EdgeSpec& a, const EdgeSpec& b) {
        return a.from != b.from ? a.from < b.from : a.to < b.to;
    });
    if (!spec.weights.empty()) {
        if (spec.weights.size() != edges.size()) {
            throw ValidationError("expected " + std::to_string(edges.size()) +
                                  " chain weights, got " + std::to_string(spec.weights.size()));
        }
        for (std::size_t i = 0; i < edges.size(); ++i) edges[i].weight = spec.weights[i];
    } else {
        Rng rng(spec.seed);
        for (EdgeSpec& e : edges) e.weight = Value::of(rng.uniform(-4, 9));
    }

    return DpDag::build(spec.length, std::move(edges), {{1, Value::of(0)}}, {spec.length},
                        SemiringTag::MaxPlus, std::max(1, spec.step));
}

DpDag build_random_layered(const LayeredSpec& spec) {
    if (spec.layers < 1 || spec.width < 1) {
        throw ValidationError("layer and width counts must be >= 1");
    }
    if (!(spec.density > 0.0) || spec.density > 1.0) {
        throw ValidationError("edge density must lie in (0, 1]");
    }

    Rng rng(spec.seed);
    const auto vertex_of = [&](int layer, int slot) {
        return static_cast<Vertex>(layer * spec.width + slot + 1);
    };

    std::vector<EdgeSpec> edges;
    for (int layer = 0; layer + 1 < spec.layers; ++layer) {
        for (int a = 0; a < spec.width; ++a) {
            for (int b = 0; b < spec.width; ++b) {
                if (rng.bernoulli(spec.density)) {
                    edges.push_back({vertex_of(layer, a), vertex_of(layer + 1, b),
                                     Value::of(rng.uniform(-4, 7))});
                }
            }
        }
        // Repair: no vertex of the next layer may end up orphaned.
        std::vector<char> has_pred(static_cast<std::size_t>(spec.width), 0);
        for (const EdgeSpec& e : edges) {
            if (e.to > vertex_of(layer + 1, -1) && e.to <= vertex_of(layer + 1, spec.width - 1)) {
                has_pred[static_cast<std::size_t>(e.to - vertex_of(layer + 1, 0))] = 1;
            }
        }
        for (int b = 0; b < spec.width; ++b) {
            if (!has_pred[static_cast<std::size_t>(b)]) {
                const int a = static_cast<int>(rng.uniform(0, spec.width - 1));
                edges.push_back(
                    {vertex_of(layer, a), vertex_of(layer + 1, b), Value::of(rng.uniform(-4, 7))});
            }
        }
    }

    std::vector<SourceSpec> sources;
    for (int a = 0; a < spec.width; ++a) {
        sources.push_back({vertex_of(0, a), Value::of(rng.uniform(-4, 7))});
    }
    std::vector<Vertex> sinks;
    for (int b = 0; b < spec.width; ++b) sinks.push_back(vertex_of(spec.layers - 1, b));

    return DpDag::build(static_cast<Vertex>(spec.layers) * spec.width, std::move(edges),
                        std::move(sources), std::move(sinks), SemiringTag::MaxPlus,
                        std::max(kDefaultDeltaMax, spec.width));
}

DpDag build_lb_gadget(const GadgetSpec& spec) {
    if (spec.omega < 1) throw ValidationError("gadget omega must be >= 1");
    if (static_cast<int>(spec.pattern.size()) != spec.omega) {
        throw ValidationError("gadget pattern must have one bit per lane");
    }
    if (std::none_of(spec.pattern.begin(), spec.pattern.end(), [](bool b) { return b; })) {
        throw ValidationError("gadget pattern must have at least one active lane");
    }
    const int stages = spec.layer_count > 0 ? spec.layer_count : spec.omega;

    // Topological order: source, the omega lane heads, then per stage the
    // (hi, lo) choice pair of every lane, then the sink.
    const Vertex source = 1;
    const auto lane_head = [&](int lane) { return static_cast<Vertex>(1 + lane); }; // 1-based lane
    const auto stage_vertex = [&](int stage, int lane, bool hi) {
        return static_cast<Vertex>(1 + spec.omega + ((stage - 1) * spec.omega + (lane - 1)) * 2 +
                                   (hi ? 1 : 2));
    };
    const Vertex sink = static_cast<Vertex>(1 + spec.omega + stages * spec.omega * 2 + 1);

    // Stage k's cheap side: the hi vertex iff pattern bit k is set (cyclic
    // when there are more stages than lanes); without pattern encoding the
    // hi side is always cheap.
    const auto stage_weight = [&](int stage, bool hi) {
        bool hi_is_cheap = true;
        if (spec.encode_pattern) {
            hi_is_cheap = spec.pattern[static_cast<std::size_t>((stage - 1) % spec.omega)];
        }
        return Value::of(hi == hi_is_cheap ? 1 : 0);
    };

    std::vector<EdgeSpec> edges;
    for (int lane = 1; lane <= spec.omega; ++lane) {
        edges.push_back({source, lane_head(lane), Value::of(0)});
        const bool active = spec.pattern[static_cast<std::size_t>(lane - 1)];
        const Value lane_weight =
            active ? Value::of(static_cast<std::int64_t>(spec.omega - lane) * kGadgetLaneStride)
                   : Value::of(kGadgetInactivePenalty);
        for (bool hi : {true, false}) {
            edges.push_back({lane_head(lane), stage_vertex(1, lane, hi),
                             extend(lane_weight, stage_weight(1, hi))});
        }
        for (int stage = 1; stage + 1 <= stages; ++stage) {
            for (bool from_hi : {true, false}) {
                for (bool to_hi : {true, false}) {
                    edges.push_back({stage_vertex(stage, lane, from_hi),
                                     stage_vertex(stage + 1, lane, to_hi),
                                     stage_weight(stage + 1, to_hi)});
                }
            }
        }
        for (bool hi : {true, false}) {
            edges.push_back({stage_vertex(stages, lane, hi), sink, Value::of(0)});
        }
    }

    return DpDag::build(sink, std::move(edges), {{source, Value::of(0)}}, {sink},
                        SemiringTag::MaxPlus, std::max(kDefaultDeltaMax, 2 * spec.omega));
}

std::int64_t two_row_alignment_score(const std::string& a, const std::string& b,
                                     const GridScoring& scoring) {
    const std::size_t m = a.size(), n = b.size();
    const std::int64_t match = scoring.match.payload();
    const std::int64_t mismatch = scoring.mismatch.payload();
    const std::int64_t gap = scoring.gap.payload();

    std::vector<std::int64_t> prev(n + 1), cur(n + 1);
    for (std::size_t j = 0; j <= n; ++j) prev[j] = static_cast<std::int64_t>(j) * gap;
    for (std::size_t i = 1; i <= m; ++i) {
        cur[0] = prev[0] + gap;
        for (std::size_t j = 1; j <= n; ++j) {
            const std::int64_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? match : mismatch);
            cur[j] = std::max({prev[j] + gap, cur[j - 1] + gap, sub});
        }
        std::swap(prev, cur);
    }
    return prev[n];
}

std::int64_t two_row_banded_score(const std::string& a, const std::string& b,
                                  const GridScoring& scoring, int band) {
    const int m = static_cast<int>(a.size()), n = static_cast<int>(b.size());
    if (band < 0 || std::abs(m - n) > band) {
        throw ValidationError("band cannot connect the grid corners");
    }
    const std::int64_t match = scoring.match.payload();
    const std::int64_t mismatch = scoring.mismatch.payload();
    const std::int64_t gap = scoring.gap.payload();
    // Absent-cell sentinel, deep enough that adding scores cannot rehabilitate it.
    const std::int64_t absent = std::numeric_limits<std::int64_t>::min() / 4;

    std::vector<std::int64_t> prev(static_cast<std::size_t>(n) + 1, absent);
    std::vector<std::int64_t> cur(static_cast<std::size_t>(n) + 1, absent);
    prev[0] = 0;
    for (int j = 1; j <= n && j <= band; ++j) {
        prev[static_cast<std::size_t>(j)] = prev[static_cast<std::size_t>(j - 1)] + gap;
    }
    for (int i = 1; i <= m; ++i) {
        std::fill(cur.begin(), cur.end(), absent);
        for (int j = std::max(0, i - band); j <= std::min(n, i + band); ++j) {
            std::int64_t best = absent;
            if (prev[static_cast<std::size_t>(j)] > absent) {
                best = std::max(best, prev[static_cast<std::size_t>(j)] + gap);
            }
            if (j > 0 && cur[static_cast<std::size_t>(j - 1)] > absent) {
                best = std::max(best, cur[static_cast<std::size_t>(j - 1)] + gap);
            }
            if (j > 0 && prev[static_cast<std::size_t>(j - 1)] > absent) {
                const bool is_match = a[static_cast<std::size_t>(i - 1)] ==
                                      b[static_cast<std::size_t>(j - 1)];
                best = std::max(best, prev[static_cast<std::size_t>(j - 1)] +
                                          (is_match ? match : mismatch));
            }
            cur[static_cast<std::size_t>(j)] = best;
        }
        std::swap(prev, cur);
    }
    return prev[static_cast<std::size_t>(n)];
}

std::string random_string(std::size_t length, int alphabet, Rng& rng) {
    std::string s(length, 'A');
    for (char& c : s) c = static_cast<char>('A' + rng.uniform(0, alphabet - 1));
    return s;
}

} // namespace dagtrace
