#include "doctest.h"

#include "dagtrace/builders.hpp"
#include "dagtrace/forward.hpp"
#include "dagtrace/oracle.hpp"
#include "support/test_support.hpp"

using namespace dagtrace;

namespace {

DpDag unit_chain(Vertex length) {
    std::vector<EdgeSpec> edges;
    for (Vertex v = 1; v < length; ++v) edges.push_back({v, v + 1, Value::of(1)});
    return DpDag::build(length, std::move(edges), {{1, Value::of(0)}}, {length});
}

} // namespace

TEST_CASE("global forward on a unit chain") {
    const DpDag dag = unit_chain(5);
    CHECK(global_forward(dag, 5) == Value::of(4));
    CHECK(global_forward(dag, 1) == Value::of(0));
    CHECK_THROWS_AS(global_forward(dag, 0), std::out_of_range);
    CHECK_THROWS_AS(global_forward(dag, 6), std::out_of_range);
}

TEST_CASE("global forward on the AB/AB LCS grid") {
    GridSpec spec;
    spec.a = "AB";
    spec.b = "AB";
    const DpDag dag = build_grid(spec);
    const Vertex sink = full_grid_vertex(2, 2, GridOrder::ColumnMajor, 2, 2);
    CHECK(sink == dag.vertex_count());
    CHECK(global_forward(dag, sink) == Value::of(2));
}

TEST_CASE("unreachable target yields bottom, not an error") {
    // vertex 3 is an isolated sink with no incoming path
    const DpDag dag =
        DpDag::build(3, {{1, 2, Value::of(1)}}, {{1, Value::of(0)}}, {2, 3});
    CHECK(global_forward(dag, 3).is_bottom());
}

TEST_CASE("local prefix pass over the full range equals the global pass") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        LayeredSpec spec;
        spec.layers = 6;
        spec.width = 4;
        spec.density = 0.5;
        spec.seed = seed;
        const DpDag dag = build_random_layered(spec);
        const Boundary sources = Boundary::sources_of(dag);
        for (Vertex t = 1; t <= dag.vertex_count(); t += 5) {
            const std::vector<Vertex> targets{t};
            const auto values =
                local_prefix_values(dag, 1, dag.vertex_count(), sources, targets);
            CHECK(values[0] == global_forward(dag, t));
        }
    }
}

TEST_CASE("prefix pass rejects out-of-window or unsorted targets") {
    const DpDag dag = unit_chain(8);
    const Boundary sources = Boundary::sources_of(dag);
    const std::vector<Vertex> outside{6};
    CHECK_THROWS_AS(local_prefix_values(dag, 1, 4, sources, outside), std::out_of_range);
    const std::vector<Vertex> unsorted{3, 2};
    CHECK_THROWS_AS(local_prefix_values(dag, 1, 4, sources, unsorted), ValidationError);
    CHECK_THROWS_AS(local_prefix_values(dag, 5, 4, sources, {}), std::out_of_range);
}

TEST_CASE("empty boundary yields bottom everywhere") {
    const DpDag dag = unit_chain(6);
    const std::vector<Vertex> targets{2, 4};
    const auto values = local_prefix_values(dag, 2, 5, Boundary{}, targets);
    CHECK(values[0].is_bottom());
    CHECK(values[1].is_bottom());
}

TEST_CASE("local re-evaluation with true boundary values reproduces global values") {
    // 200 random layered DAGs, T <= 256
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        LayeredSpec spec;
        spec.layers = 2 + static_cast<int>(seed % 15);
        spec.width = 1 + static_cast<int>(seed % 16);
        spec.density = 0.2 + 0.15 * static_cast<double>(seed % 5);
        spec.seed = seed * 31;
        const DpDag dag = build_random_layered(spec);
        REQUIRE(dag.vertex_count() <= 256);
        const FullTable table = oracle_solve(dag);

        const Vertex T = dag.vertex_count();
        const Vertex lo = 1 + static_cast<Vertex>(seed % static_cast<std::uint64_t>(T));
        const Vertex hi =
            lo + static_cast<Vertex>((seed * 7) % static_cast<std::uint64_t>(T - lo + 1));

        // True-valued boundary: every outside predecessor of the window,
        // plus in-window sources with their init values.
        std::vector<Vertex> bv;
        std::vector<Value> bx;
        for (Vertex u = 1; u < lo; ++u) {
            if (dag.max_successor_within(u, hi) >= lo) {
                bv.push_back(u);
                bx.push_back(table.value(u));
            }
        }
        for (const SourceSpec& s : dag.sources()) {
            if (s.vertex >= lo && s.vertex <= hi) {
                bv.push_back(s.vertex);
                bx.push_back(s.init);
            }
        }
        const Boundary boundary(std::move(bv), std::move(bx));

        std::vector<Vertex> targets;
        for (Vertex v = lo; v <= hi; ++v) targets.push_back(v);
        const auto values = local_prefix_values(dag, lo, hi, boundary, targets);
        for (std::size_t i = 0; i < targets.size(); ++i) {
            CHECK(values[i] == table.value(targets[i]));
            ++checked;
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("suffix values") {
    // single edge (v, s) of weight 3: identity (x) 3
    const DpDag dag = DpDag::build(2, {{1, 2, Value::of(3)}}, {{1, Value::of(0)}}, {2});
    CHECK(suffix_value(dag, 1, 2, 2) == Value::of(3));

    // no path from source to sink inside the window
    const DpDag gap = DpDag::build(3, {{1, 2, Value::of(1)}, {1, 3, Value::of(1)}},
                                   {{1, Value::of(0)}}, {3});
    CHECK(suffix_value(gap, 2, 3, 3).is_bottom());

    CHECK_THROWS_AS(suffix_value(dag, 2, 2, 2), std::out_of_range);
    CHECK_THROWS_AS(suffix_value(dag, 1, 1, 2), std::out_of_range);
}

TEST_CASE("suffix value matches a full-table solve of the sub-window") {
    GridSpec spec;
    spec.a = "ABCB";
    spec.b = "BDCAB";
    const DpDag dag = build_grid(spec);
    const Vertex sink = dag.vertex_count();
    const auto frontier = dag.middle_frontier({1, sink});
    REQUIRE(!frontier.empty());
    for (Vertex v : frontier) {
        // independent dense evaluation over (v, sink] seeded at identity
        std::vector<Value> dense(static_cast<std::size_t>(sink) + 1, Value::bottom());
        dense[static_cast<std::size_t>(v)] = Value::identity_mul();
        for (Vertex w = v + 1; w <= sink; ++w) {
            const auto preds = dag.predecessors(w);
            const auto weights = dag.predecessor_weights(w);
            Value best = Value::bottom();
            for (std::size_t i = 0; i < preds.size(); ++i) {
                if (preds[i] < v) continue;
                best = combine(best, extend(dense[static_cast<std::size_t>(preds[i])], weights[i]));
            }
            dense[static_cast<std::size_t>(w)] = best;
        }
        CHECK(suffix_value(dag, v, sink, sink) == dense[static_cast<std::size_t>(sink)]);
    }
}

TEST_CASE("prefix values of the left half of a grid match the full table") {
    GridSpec spec;
    spec.a = "ABCB";
    spec.b = "BDCAB";
    const DpDag dag = build_grid(spec);
    const FullTable table = oracle_solve(dag);
    const Interval root{1, dag.vertex_count()};
    const Vertex mid = root.midpoint();
    const auto frontier = dag.middle_frontier(root);
    const auto values =
        local_prefix_values(dag, 1, mid, Boundary::sources_of(dag), frontier);
    for (std::size_t i = 0; i < frontier.size(); ++i) {
        CHECK(values[i] == table.value(frontier[i]));
    }
}

TEST_CASE("buffer bound holds at every step with full assertions") {
    PassContext ctx;
    ctx.assert_level = AssertLevel::Full;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        LayeredSpec spec;
        spec.layers = 8;
        spec.width = 6;
        spec.density = 0.45;
        spec.seed = seed;
        const DpDag dag = build_random_layered(spec);
        CHECK_NOTHROW(global_forward(dag, dag.vertex_count(), ctx));
    }
}

TEST_CASE("forward passes are deterministic") {
    LayeredSpec spec;
    spec.layers = 7;
    spec.width = 5;
    spec.density = 0.4;
    spec.seed = 11;
    const DpDag dag = build_random_layered(spec);
    const Value first = global_forward(dag, dag.vertex_count());
    for (int i = 0; i < 3; ++i) CHECK(global_forward(dag, dag.vertex_count()) == first);
}

TEST_CASE("boundary rejects duplicates and mismatched lengths") {
    CHECK_THROWS_AS(Boundary({1, 1}, {Value::of(0), Value::of(1)}), ValidationError);
    CHECK_THROWS_AS(Boundary({1}, {}), ValidationError);
    const Boundary b({3, 1}, {Value::of(30), Value::of(10)});
    CHECK(b.value_of(1) == Value::of(10)); // sorted on construction
    CHECK(b.value_of(3) == Value::of(30));
    CHECK(b.value_of(2).is_bottom());
}
