#include <doctest.h>

#include <map>

#include "asymsched/errors.hpp"
#include "asymsched/remnants.hpp"
#include "support/corpus.hpp"

using namespace asymsched;

TEST_CASE("[remnants] worked example, s = 4: makespan 2") {
    auto inst = make_chain_instance({3, 3, 2, 2}, {Rational(4), Rational(1), Rational(1)});
    auto result = remnants_schedule(inst);
    CHECK(!validate(result.schedule).has_value());
    CHECK(makespan(result.schedule) == Rational(2));

    REQUIRE(result.trace.size() == 2);
    // Round 1: fast takes all of chain 0 and one task of chain 1; the two
    // slow processors take the heads of chains 2 and 3.
    const auto& r1 = result.trace[0];
    CHECK(r1.fast_picks == std::vector<std::pair<int, int>>{{0, 3}, {1, 1}});
    CHECK(r1.slow_picks == std::vector<std::pair<int, int>>{{2, 1}, {3, 2}});
    // Round 2: the fast processor sweeps the remaining four tasks.
    const auto& r2 = result.trace[1];
    CHECK(r2.fast_picks == std::vector<std::pair<int, int>>{{1, 2}, {2, 1}, {3, 1}});
    CHECK(r2.slow_picks.empty());
}

TEST_CASE("[remnants] worked example, s = 3: makespan 2 + 1/3") {
    auto inst = make_chain_instance({3, 3, 2, 2}, {Rational(3), Rational(1), Rational(1)});
    auto result = remnants_schedule(inst);
    CHECK(!validate(result.schedule).has_value());
    CHECK(makespan(result.schedule) == Rational(7, 3));
    CHECK(result.trace.size() == 3);
    // The final round is a single fast task of duration 1/3.
    const auto& last = result.trace.back();
    CHECK(last.fast_picks.size() == 1);
    CHECK(last.slow_picks.empty());
}

TEST_CASE("[remnants] single chain serializes on the fast processor") {
    auto inst = make_chain_instance({5}, {Rational(2), Rational(1)});
    auto result = remnants_schedule(inst);
    CHECK(!validate(result.schedule).has_value());
    CHECK(makespan(result.schedule) == Rational(5, 2));
    for (const auto& seg : result.schedule.segments) CHECK(seg.machine == 0);
}

TEST_CASE("[remnants] preconditions") {
    auto sym = make_chain_instance({2, 1}, {Rational(1), Rational(1)});
    CHECK_THROWS_AS(remnants_schedule(sym), NotSingleFast);

    auto two_fast = make_chain_instance({2, 1}, {Rational(2), Rational(2), Rational(1)});
    CHECK_THROWS_AS(remnants_schedule(two_fast), NotSingleFast);

    auto frac = make_chain_instance({2, 1}, {Rational(3, 2), Rational(1)});
    CHECK_THROWS_AS(remnants_schedule(frac), NonIntegerSpeed);

    // The diamond decomposes with cross-chain edges; remnants rejects it.
    auto g = TaskGraph::validate_dag(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    Instance diamond;
    diamond.graph = std::make_shared<TaskGraph>(g);
    diamond.chains = std::make_shared<ChainSet>(decompose_chains(*diamond.graph));
    diamond.machines =
        std::make_shared<MachineConfig>(std::vector<Rational>{Rational(2), Rational(1)});
    CHECK_THROWS_AS(remnants_schedule(diamond), CrossChainEdges);
}

TEST_CASE("[remnants] schedules are valid, non-preemptive, and round-structured") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        auto inst = testsupport::random_single_fast_chains(seed);
        auto result = remnants_schedule(inst);
        CHECK(!validate(result.schedule).has_value());

        // Non-preemptive: one segment per task.
        std::map<int, int> count;
        for (const auto& seg : result.schedule.segments) count[seg.task]++;
        for (auto [task, c] : count) CHECK(c == 1);
        CHECK(static_cast<int>(count.size()) == inst.graph->task_count());

        long n = inst.graph->task_count();
        CHECK(static_cast<long>(result.trace.size()) <= n);
        long s = inst.machines->two_speed_view()->s.num_long();
        int m = inst.machines->machine_count();
        for (const auto& round : result.trace) {
            long fast_total = 0;
            for (auto [chain, cnt] : round.fast_picks) fast_total += cnt;
            CHECK(fast_total <= s);
            CHECK(static_cast<int>(round.slow_picks.size()) <= m - 1);
            // Fast picks are a prefix of the sorted remnants; slow picks the
            // following ones; no chain gets both.
            std::map<int, bool> fast_chains;
            for (auto [chain, cnt] : round.fast_picks) fast_chains[chain] = true;
            for (auto [chain, machine] : round.slow_picks) CHECK(!fast_chains.count(chain));
        }
    }
}

TEST_CASE("[remnants] guarantee holds on the trivial single-task instance") {
    auto inst = make_chain_instance({1}, {Rational(2), Rational(1)});
    auto result = remnants_schedule(inst);
    CHECK(makespan(result.schedule) == Rational(1, 2));
    CHECK(!check_remnants_guarantee(inst, Rational(1, 2)).has_value());
}
