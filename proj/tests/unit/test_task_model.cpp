#include <doctest.h>

#include <numeric>
#include <set>

#include "asymsched/errors.hpp"
#include "asymsched/task_model.hpp"
#include "support/corpus.hpp"

using namespace asymsched;

TEST_CASE("[taskmodel] validate_dag accepts a two-node chain") {
    auto g = TaskGraph::validate_dag(2, {{0, 1}});
    CHECK(g.task_count() == 2);
    CHECK(g.topological_order() == std::vector<int>{0, 1});
}

TEST_CASE("[taskmodel] validate_dag rejects a 2-cycle with a witness") {
    try {
        TaskGraph::validate_dag(2, {{0, 1}, {1, 0}});
        FAIL("expected CycleDetected");
    } catch (const CycleDetected& e) {
        std::set<int> cyc(e.cycle.begin(), e.cycle.end());
        CHECK(cyc == std::set<int>{0, 1});
    }
}

TEST_CASE("[taskmodel] validate_dag rejects bad ids and accepts the diamond") {
    CHECK_THROWS_AS(TaskGraph::validate_dag(2, {{0, 5}}), InvalidTaskId);
    auto g = TaskGraph::validate_dag(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    CHECK(g.task_count() == 4);
    CHECK(g.predecessors(3).size() == 2);
}

TEST_CASE("[taskmodel] decompose_chains on already-chain graphs") {
    // a->b->c and d->e.
    auto g = TaskGraph::validate_dag(5, {{0, 1}, {1, 2}, {3, 4}});
    auto cs = decompose_chains(g);
    CHECK(cs.chains() == std::vector<std::vector<int>>{{0, 1, 2}, {3, 4}});
    CHECK(cs.cross_edges().empty());
}

TEST_CASE("[taskmodel] decompose_chains peels the diamond deterministically") {
    auto g = TaskGraph::validate_dag(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    auto cs = decompose_chains(g);
    CHECK(cs.chains() == std::vector<std::vector<int>>{{0, 1, 3}, {2}});
    // The cross edges 0->2 and 2->3 survive as side structure.
    CHECK(cs.cross_edges() == std::vector<std::pair<int, int>>{{0, 2}, {2, 3}});
}

TEST_CASE("[taskmodel] decompose_chains on the empty graph") {
    auto g = TaskGraph::validate_dag(0, {});
    auto cs = decompose_chains(g);
    CHECK(cs.chains().empty());
}

TEST_CASE("[taskmodel] chains partition the tasks with sorted lengths") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto inst = testsupport::random_two_speed_dag(seed);
        auto cs = decompose_chains(*inst.graph);
        auto lengths = cs.lengths();
        CHECK(std::accumulate(lengths.begin(), lengths.end(), 0) == inst.graph->task_count());
        for (size_t i = 1; i < lengths.size(); ++i) CHECK(lengths[i - 1] >= lengths[i]);
        std::set<int> seen;
        for (const auto& chain : cs.chains()) {
            for (size_t i = 0; i < chain.size(); ++i) {
                CHECK(!seen.count(chain[i]));
                seen.insert(chain[i]);
                if (i > 0) CHECK(inst.graph->has_edge(chain[i - 1], chain[i]));
            }
        }
        CHECK(static_cast<int>(seen.size()) == inst.graph->task_count());
    }
}

TEST_CASE("[taskmodel] is_two_speed recognition") {
    MachineConfig a({Rational(4), Rational(1), Rational(1)});
    auto va = is_two_speed(a);
    REQUIRE(va.has_value());
    CHECK(va->m == 3);
    CHECK(va->m_s == 1);
    CHECK(va->s == Rational(4));

    MachineConfig b({Rational(2), Rational(2), Rational(1)});
    auto vb = is_two_speed(b);
    REQUIRE(vb.has_value());
    CHECK(vb->m == 3);
    CHECK(vb->m_s == 2);
    CHECK(vb->s == Rational(2));

    MachineConfig c({Rational(3), Rational(2), Rational(1)});
    CHECK(!is_two_speed(c).has_value());

    MachineConfig d({Rational(1), Rational(1)});
    CHECK(!is_two_speed(d).has_value());
}

TEST_CASE("[taskmodel] machine config sorts speeds and sums capability") {
    MachineConfig c({Rational(1), Rational(4), Rational(1)});
    CHECK(c.speed(0) == Rational(4));
    CHECK(c.total_capability() == Rational(6));
    CHECK_THROWS_AS(MachineConfig({Rational(0)}), InvalidSpec);
}

TEST_CASE("[taskmodel] energy params validate alpha > 1") {
    CHECK_THROWS_AS(EnergyParams(Rational(1)), InvalidSpec);
    CHECK_THROWS_AS(EnergyParams(Rational(1, 2)), InvalidSpec);
    CHECK(EnergyParams(Rational(3, 2)).alpha == Rational(3, 2));
}

TEST_CASE("[taskmodel] chains_from_lists validates structure") {
    auto g = TaskGraph::validate_dag(3, {{0, 1}});
    CHECK_THROWS_AS(chains_from_lists(g, {{0, 2}, {1}}), InvalidChainSet);  // 0->2 not an edge
    CHECK_THROWS_AS(chains_from_lists(g, {{0, 1}}), InvalidChainSet);      // 2 uncovered
    auto cs = chains_from_lists(g, {{2}, {0, 1}});
    CHECK(cs.chains() == std::vector<std::vector<int>>{{0, 1}, {2}});
}
