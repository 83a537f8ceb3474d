#include "doctest.h"

#include "dagtrace/builders.hpp"
#include "dagtrace/oracle.hpp"
#include "support/test_support.hpp"

using namespace dagtrace;
namespace dt = dagtrace::testing;

TEST_CASE("oracle on a unit chain") {
    std::vector<EdgeSpec> edges;
    for (Vertex v = 1; v < 10; ++v) edges.push_back({v, v + 1, Value::of(1)});
    const DpDag dag = DpDag::build(10, std::move(edges), {{1, Value::of(0)}}, {10});
    const FullTable table = oracle_solve(dag);
    for (Vertex v = 1; v <= 10; ++v) {
        CHECK(table.value(v) == Value::of(v - 1));
        CHECK(table.pred(v) == (v == 1 ? kNoVertex : v - 1));
    }
    const WitnessPath path = oracle_traceback(dag, table, 10);
    REQUIRE(path.vertices.size() == 10);
    for (Vertex v = 1; v <= 10; ++v) CHECK(path.vertices[static_cast<std::size_t>(v - 1)] == v);
}

TEST_CASE("oracle value of the classic LCS pair") {
    GridSpec spec;
    spec.a = "ABCBDAB";
    spec.b = "BDCABA";
    const DpDag dag = build_grid(spec);
    const FullTable table = oracle_solve(dag);
    CHECK(table.value(dag.vertex_count()) == Value::of(4));
    // cross-check with the independent two-row implementation
    CHECK(two_row_alignment_score(spec.a, spec.b, spec.scoring) == 4);
}

TEST_CASE("oracle traceback errors and degenerate cases") {
    const DpDag dag =
        DpDag::build(3, {{1, 2, Value::of(1)}}, {{1, Value::of(0)}}, {2, 3});
    const FullTable table = oracle_solve(dag);
    CHECK_THROWS_AS(oracle_traceback(dag, table, 3), NoWitnessError);

    const DpDag single = DpDag::build(1, {}, {{1, Value::of(0)}}, {1});
    const FullTable t1 = oracle_solve(single);
    CHECK(oracle_traceback(single, t1, 1).vertices == std::vector<Vertex>{1});
}

TEST_CASE("oracle path value folds back to the sink value on random layered DAGs") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        LayeredSpec spec;
        spec.layers = 3 + static_cast<int>(seed % 8);
        spec.width = 1 + static_cast<int>(seed % 6);
        spec.density = 0.5;
        spec.seed = seed * 17;
        const DpDag dag = build_random_layered(spec);
        const FullTable table = oracle_solve(dag);
        const Vertex sink = dag.vertex_count();
        if (table.value(sink).is_bottom()) continue;
        const WitnessPath path = oracle_traceback(dag, table, sink);
        CHECK(path_value(dag, path) == table.value(sink));
        CHECK(path.vertices.back() == sink);
        CHECK(dag.is_source(path.vertices.front()));
    }
}

TEST_CASE("gadget witness for the all-active pattern goes through lane 1") {
    GadgetSpec spec;
    spec.omega = 3;
    spec.pattern = {true, true, true};
    const DpDag dag = build_lb_gadget(spec);
    const FullTable table = oracle_solve(dag);
    const WitnessPath path = oracle_traceback(dag, table, dag.vertex_count());
    REQUIRE(path.vertices.size() >= 2);
    CHECK(path.vertices[1] == 2); // lane heads sit right after the source; lane 1 first
}

TEST_CASE("oracle pred-following matches exhaustive path enumeration on the small family") {
    int instances = 0, witnessed = 0;
    dt::for_each_small_instance(3, 3, 64, [&](const DpDag& dag) {
        ++instances;
        const auto raw = dt::raw_of(dag);
        const FullTable table = oracle_solve(dag);
        for (Vertex sink : dag.sinks()) {
            const auto expected = dt::brute_canonical_path(raw, sink);
            if (!expected) {
                CHECK(table.value(sink).is_bottom());
                CHECK_THROWS_AS(oracle_traceback(dag, table, sink), NoWitnessError);
                continue;
            }
            ++witnessed;
            const WitnessPath path = oracle_traceback(dag, table, sink);
            CHECK(path == *expected);
            CHECK(path_value(dag, path).payload() == *dt::brute_best_value(raw, sink));
        }
    });
    CHECK(instances > 500);
    CHECK(witnessed > 500);
}

TEST_CASE("compare_runs reports") {
    const WitnessPath a{{1, 2, 3}};
    const WitnessPath b{{1, 2, 3}};
    RunMetrics ma;
    ma.peak_live_words = 10;
    ma.vertex_visit_count = 100;
    RunMetrics mb;
    mb.peak_live_words = 120;
    mb.vertex_visit_count = 50;

    const ComparisonReport same = compare_runs(a, b, ma, mb, Value::of(7), Value::of(7));
    CHECK(same.paths_equal);
    CHECK(same.values_equal);
    CHECK(same.equal());
    CHECK(same.first_divergence == -1);
    CHECK(same.peak_words_ratio_b_over_a == doctest::Approx(12.0));

    const WitnessPath c{{1, 4, 5}};
    const ComparisonReport diff = compare_runs(a, c, ma, mb, Value::of(7), Value::of(6));
    CHECK_FALSE(diff.paths_equal);
    CHECK_FALSE(diff.values_equal);
    CHECK(diff.first_divergence == 1);
    CHECK(diff.to_json().find("\"paths_equal\":false") != std::string::npos);
}

TEST_CASE("oracle full-table peak words are linear in T") {
    GridSpec spec;
    spec.a = "AAAA";
    spec.b = "BBBBBB";
    const DpDag dag = build_grid(spec);
    const RunMetrics m = oracle_solve_metrics(dag);
    CHECK(m.peak_live_words == 2 * dag.vertex_count());
}
