#include "doctest.h"

#include <set>

#include "dagtrace/builders.hpp"
#include "dagtrace/dag.hpp"
#include "support/test_support.hpp"

using namespace dagtrace;
namespace dt = dagtrace::testing;

namespace {

DpDag simple_chain(Vertex length) {
    std::vector<EdgeSpec> edges;
    for (Vertex v = 1; v < length; ++v) edges.push_back({v, v + 1, Value::of(1)});
    return DpDag::build(length, std::move(edges), {{1, Value::of(0)}}, {length});
}

} // namespace

TEST_CASE("construction validation") {
    CHECK_THROWS_AS(DpDag::build(0, {}, {{1, Value::of(0)}}, {1}), ValidationError);

    // topological order: u < v required
    CHECK_THROWS_AS(DpDag::build(3, {{2, 1, Value::of(0)}}, {{1, Value::of(0)}}, {3}),
                    ValidationError);
    CHECK_THROWS_AS(DpDag::build(3, {{2, 2, Value::of(0)}}, {{1, Value::of(0)}}, {3}),
                    ValidationError);
    CHECK_THROWS_AS(DpDag::build(3, {{1, 4, Value::of(0)}}, {{1, Value::of(0)}}, {3}),
                    ValidationError);

    // multi-edges rejected
    CHECK_THROWS_AS(DpDag::build(3, {{1, 2, Value::of(0)}, {1, 2, Value::of(1)}},
                                 {{1, Value::of(0)}}, {3}),
                    ValidationError);

    // sources: non-empty, in-degree zero, unique, finite init
    CHECK_THROWS_AS(DpDag::build(3, {}, {}, {3}), ValidationError);
    CHECK_THROWS_AS(DpDag::build(3, {{1, 2, Value::of(0)}}, {{2, Value::of(0)}}, {3}),
                    ValidationError);
    CHECK_THROWS_AS(
        DpDag::build(3, {}, {{1, Value::of(0)}, {1, Value::of(1)}}, {3}), ValidationError);
    CHECK_THROWS_AS(DpDag::build(3, {}, {{1, Value::bottom()}}, {3}), ValidationError);

    // sinks: non-empty, in range
    CHECK_THROWS_AS(DpDag::build(3, {}, {{1, Value::of(0)}}, {}), ValidationError);
    CHECK_THROWS_AS(DpDag::build(3, {}, {{1, Value::of(0)}}, {4}), ValidationError);

    // in-degree cap
    CHECK_THROWS_AS(DpDag::build(4,
                                 {{1, 4, Value::of(0)}, {2, 4, Value::of(0)}, {3, 4, Value::of(0)}},
                                 {{1, Value::of(0)}}, {4}, SemiringTag::MaxPlus, 2),
                    ValidationError);

    // bottom edge weights rejected
    CHECK_THROWS_AS(DpDag::build(2, {{1, 2, Value::bottom()}}, {{1, Value::of(0)}}, {2}),
                    ValidationError);
}

TEST_CASE("adjacency, max_successor and degree stats") {
    const DpDag dag = DpDag::build(
        5, {{1, 3, Value::of(2)}, {1, 2, Value::of(1)}, {2, 3, Value::of(3)}, {3, 5, Value::of(4)},
            {2, 4, Value::of(5)}},
        {{1, Value::of(0)}}, {5});

    const auto preds3 = dag.predecessors(3);
    REQUIRE(preds3.size() == 2);
    CHECK(preds3[0] == 1); // canonical edge order: ascending tail
    CHECK(preds3[1] == 2);
    CHECK(dag.predecessor_weights(3)[0] == Value::of(2));
    CHECK(dag.predecessor_weights(3)[1] == Value::of(3));

    CHECK(dag.max_successor(1) == 3);
    CHECK(dag.max_successor(2) == 4);
    CHECK(dag.max_successor(5) == kNoVertex);
    CHECK(dag.max_successor_within(2, 3) == 3);
    CHECK(dag.max_successor_within(2, 2) == kNoVertex);
    CHECK(dag.max_in_degree() == 2);
    CHECK(dag.max_out_degree() == 2);
    CHECK(dag.edge_count() == 5);
}

TEST_CASE("frontier of a chain") {
    const DpDag dag = simple_chain(5);
    CHECK(dag.frontier_at(0).empty());
    CHECK(dag.frontier_at(3) == std::vector<Vertex>{3});
    CHECK(dag.frontier_at(5).empty()); // no successor beyond the last vertex
    CHECK(dag.frontier_width() == 1);
    CHECK_THROWS_AS(dag.frontier_at(-1), std::out_of_range);
    CHECK_THROWS_AS(dag.frontier_at(6), std::out_of_range);

    const DpDag big = simple_chain(100);
    CHECK(big.frontier_width() == 1);
}

TEST_CASE("frontier of a 3x4 column-major LCS grid at a column boundary") {
    // 3x4 vertices: strings of lengths m=2, n=3.
    GridSpec spec;
    spec.a = "AB";
    spec.b = "ABC";
    const DpDag dag = build_grid(spec);
    REQUIRE(dag.vertex_count() == 12);
    // Cut right after a full column: every cell of that column feeds the next.
    const auto frontier = dag.frontier_at(6);
    CHECK(frontier.size() == 3); // m + 1
    const auto raw = dt::raw_of(dag);
    for (Vertex ell = 0; ell <= dag.vertex_count(); ++ell) {
        CHECK(dag.frontier_at(ell) == dt::brute_frontier(raw, ell));
    }
}

TEST_CASE("frontier width matches brute force on random layered DAGs") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        LayeredSpec spec;
        spec.layers = 1 + static_cast<int>(seed % 7);
        spec.width = 1 + static_cast<int>(seed % 5);
        spec.density = 0.4;
        spec.seed = seed;
        const DpDag dag = build_random_layered(spec);
        const auto raw = dt::raw_of(dag);
        CHECK(dag.frontier_width() == dt::brute_frontier_width(raw));
        for (Vertex ell = 0; ell <= dag.vertex_count(); ++ell) {
            CHECK(dag.frontier_at(ell) == dt::brute_frontier(raw, ell));
        }
    }
}

TEST_CASE("frontiers evolve by insertion of the new vertex and deletions only") {
    LayeredSpec spec;
    spec.layers = 6;
    spec.width = 4;
    spec.density = 0.5;
    spec.seed = 99;
    const DpDag dag = build_random_layered(spec);
    for (Vertex ell = 1; ell <= dag.vertex_count(); ++ell) {
        const auto prev = dag.frontier_at(ell - 1);
        const auto cur = dag.frontier_at(ell);
        const std::set<Vertex> allowed(prev.begin(), prev.end());
        for (Vertex v : cur) {
            CHECK((allowed.count(v) > 0 || v == ell));
        }
    }
}

TEST_CASE("interval midpoint") {
    CHECK(Interval{1, 8}.midpoint() == 4);
    CHECK(Interval{5, 6}.midpoint() == 5);
    CHECK(Interval{3, 3}.midpoint() == 3);
    CHECK(Interval{1, 8}.length() == 8);
}

TEST_CASE("middle frontier") {
    const DpDag chain = simple_chain(8);
    CHECK(chain.middle_frontier({1, 8}) == std::vector<Vertex>{4});
    const DpDag two = DpDag::build(6, {{5, 6, Value::of(1)}}, {{5, Value::of(0)}}, {6});
    CHECK(two.middle_frontier({5, 6}) == std::vector<Vertex>{5});

    LayeredSpec spec;
    spec.layers = 8;
    spec.width = 8;
    spec.density = 0.35;
    spec.seed = 7;
    const DpDag dag = build_random_layered(spec);
    REQUIRE(dag.vertex_count() == 64);
    const auto raw = dt::raw_of(dag);
    for (Vertex lo = 1; lo <= 64; lo += 7) {
        for (Vertex hi = lo; hi <= 64; hi += 9) {
            const Interval interval{lo, hi};
            const Vertex mid = interval.midpoint();
            // direct evaluation of the set definition over the raw edge list
            std::vector<Vertex> expected;
            for (Vertex v = lo; v <= std::min(mid, hi); ++v) {
                bool crosses = false;
                for (const EdgeSpec& e : raw.edges) {
                    if (e.from == v && e.to > mid) crosses = true;
                }
                if (crosses) expected.push_back(v);
            }
            const auto actual = dag.middle_frontier(interval);
            CHECK(actual == expected);
            CHECK(static_cast<Vertex>(actual.size()) <= dag.frontier_width());
            // contained in the frontier at the midpoint
            const auto at_mid = dag.frontier_at(mid);
            const std::set<Vertex> mid_set(at_mid.begin(), at_mid.end());
            for (Vertex v : actual) CHECK(mid_set.count(v) == 1);
        }
    }
}
