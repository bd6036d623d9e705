#include <doctest.h>

#include "asymsched/bounds.hpp"
#include "asymsched/errors.hpp"
#include "asymsched/lprelax.hpp"
#include "asymsched/oracle.hpp"
#include "support/corpus.hpp"

using namespace asymsched;

TEST_CASE("[lprelax] rounding is degenerate at integral relaxations") {
    LpSolution lp;
    lp.x.assign(6, Rational(1));
    for (std::uint64_t seed : {0ULL, 7ULL, 12345ULL}) {
        auto a = round_a1(lp, seed);
        for (auto c : a) CHECK(c == SpeedClass::Fast);
    }
    lp.x.assign(6, Rational(0));
    for (std::uint64_t seed : {0ULL, 7ULL, 12345ULL}) {
        auto a = round_a1(lp, seed);
        for (auto c : a) CHECK(c == SpeedClass::Slow);
    }
}

TEST_CASE("[lprelax] rounding concentrates at the Bernoulli rate") {
    LpSolution lp;
    lp.x.assign(10000, Rational(1, 2));
    auto a = round_a1(lp, 20250807);
    int fast = 0;
    for (auto c : a)
        if (c == SpeedClass::Fast) ++fast;
    CHECK(fast >= 4500);
    CHECK(fast <= 5500);
}

TEST_CASE("[lprelax] rounding is a deterministic function of (lp, seed)") {
    LpSolution lp;
    for (int i = 0; i < 50; ++i) lp.x.push_back(Rational(i % 7, 7));
    auto a = round_a1(lp, 99);
    auto b = round_a1(lp, 99);
    CHECK(a == b);
    auto c = round_a1(lp, 100);
    CHECK(a != c);  // overwhelmingly likely for 50 tasks
}

TEST_CASE("[lprelax] prefix improvement per chain") {
    auto inst = make_chain_instance({3}, {Rational(2), Rational(1)});
    const auto& chain = inst.chains->chains()[0];
    SpeedAssignment draws(3);
    draws[chain[0]] = SpeedClass::Slow;
    draws[chain[1]] = SpeedClass::Fast;
    draws[chain[2]] = SpeedClass::Fast;
    auto improved = improve_a1_tilde(draws, *inst.chains);
    CHECK(improved[chain[0]] == SpeedClass::Fast);
    CHECK(improved[chain[1]] == SpeedClass::Fast);
    CHECK(improved[chain[2]] == SpeedClass::Slow);

    SpeedAssignment all_fast(3, SpeedClass::Fast);
    CHECK(improve_a1_tilde(all_fast, *inst.chains) == all_fast);
}

TEST_CASE("[lprelax] prefix improvement acts per chain and keeps counts") {
    auto inst = make_chain_instance({2, 2}, {Rational(2), Rational(1)});
    const auto& c0 = inst.chains->chains()[0];
    const auto& c1 = inst.chains->chains()[1];
    SpeedAssignment draws(4);
    draws[c0[0]] = SpeedClass::Slow;
    draws[c0[1]] = SpeedClass::Fast;
    draws[c1[0]] = SpeedClass::Fast;
    draws[c1[1]] = SpeedClass::Slow;
    auto improved = improve_a1_tilde(draws, *inst.chains);
    CHECK(improved[c0[0]] == SpeedClass::Fast);
    CHECK(improved[c0[1]] == SpeedClass::Slow);
    CHECK(improved[c1[0]] == SpeedClass::Fast);
    CHECK(improved[c1[1]] == SpeedClass::Slow);

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto rnd = testsupport::random_single_fast_chains(seed);
        LpSolution lp = solve_lp(rnd);
        auto a1 = round_a1(lp, seed * 31 + 7);
        auto tilde = improve_a1_tilde(a1, *rnd.chains);
        for (const auto& chain : rnd.chains->chains()) {
            int before = 0, after = 0;
            for (int t : chain) {
                if (a1[t] == SpeedClass::Fast) ++before;
                if (tilde[t] == SpeedClass::Fast) ++after;
            }
            CHECK(before == after);
        }
    }
}

TEST_CASE("[lprelax] threshold forces short-probability chains slow") {
    auto inst = make_chain_instance({50, 50}, {Rational(2), Rational(1)});
    LpSolution lp;
    lp.x.assign(100, Rational(0));
    lp.chain_x = std::vector<Rational>{Rational(1, 1000), Rational(1, 2)};
    SpeedAssignment assignment(100, SpeedClass::Fast);
    auto out = threshold_a2(lp, assignment, *inst.chains, 100);
    for (int t : inst.chains->chains()[0]) CHECK(out[t] == SpeedClass::Slow);
    for (int t : inst.chains->chains()[1]) CHECK(out[t] == SpeedClass::Fast);
}

TEST_CASE("[lprelax] threshold never fires at n = 1") {
    auto inst = make_chain_instance({1}, {Rational(2), Rational(1)});
    LpSolution lp;
    lp.x.assign(1, Rational(0));
    lp.chain_x = std::vector<Rational>{Rational(0)};
    SpeedAssignment assignment(1, SpeedClass::Fast);
    auto out = threshold_a2(lp, assignment, *inst.chains, 1);
    CHECK(out[0] == SpeedClass::Fast);
}

TEST_CASE("[lprelax] list scheduling worked examples") {
    auto inst = make_chain_instance({3, 3, 2, 2}, {Rational(4), Rational(1), Rational(1)});
    SpeedAssignment all_fast(10, SpeedClass::Fast);
    auto s = speed_based_list_schedule(inst, all_fast);
    CHECK(!validate(s).has_value());
    CHECK(makespan(s) == Rational(5, 2));
    auto lbq = list_bound_quantities(*inst.graph, all_fast, *inst.machines);
    CHECK(makespan(s) <= lbq.sum());

    auto chain5 = make_chain_instance({5}, {Rational(2), Rational(1)});
    SpeedAssignment all_slow(5, SpeedClass::Slow);
    auto s5 = speed_based_list_schedule(chain5, all_slow);
    CHECK(makespan(s5) == Rational(5));

    auto pair = make_chain_instance({1, 1}, {Rational(2), Rational(1)});
    SpeedAssignment fast2(2, SpeedClass::Fast);
    auto sp = speed_based_list_schedule(pair, fast2);
    CHECK(makespan(sp) == Rational(1));

    auto fast_only = make_chain_instance({2}, {Rational(2)});
    SpeedAssignment slow(2, SpeedClass::Slow);
    CHECK_THROWS_AS(speed_based_list_schedule(fast_only, slow), NoSlowMachines);
}

TEST_CASE("[lprelax] list schedules respect C + D_s + D_1 on random draws") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto inst = testsupport::random_single_fast_chains(seed);
        LpSolution lp = solve_lp(inst);
        auto assignment = improve_a1_tilde(round_a1(lp, seed), *inst.chains);
        auto sched = speed_based_list_schedule(inst, assignment);
        CHECK(!validate(sched).has_value());
        auto lbq = list_bound_quantities(*inst.graph, assignment, *inst.machines);
        CHECK(makespan(sched) <= lbq.sum());
    }
}

TEST_CASE("[lprelax] pipeline on chains (4,4): sound and within 3x of optimal") {
    auto inst = make_chain_instance({4, 4}, {Rational(2), Rational(1)});
    Rational t_opt = exact_optimal_makespan(inst);
    CHECK(t_opt == Rational(3));

    RoundingConfig rc;
    rc.seed = 7;
    rc.trials = 200;
    auto outcome = rounding_pipeline(inst, rc);
    CHECK(!validate(outcome.schedule).has_value());
    CHECK(outcome.best_makespan <= Rational(3) * t_opt);
    CHECK(outcome.best_makespan <= t_opt + Rational(1));
    for (const auto& trial : outcome.trials)
        CHECK(trial.trial_makespan <= trial.C + trial.D_s + trial.D_1);
    for (auto [f, sl] : outcome.chain_fast_slow) CHECK(f + sl == 4);
}

TEST_CASE("[lprelax] pipeline is deterministic and degenerate cases work") {
    auto inst = make_chain_instance({5}, {Rational(2), Rational(1)});
    RoundingConfig rc;
    rc.seed = 11;
    rc.trials = 16;
    auto a = rounding_pipeline(inst, rc);
    auto b = rounding_pipeline(inst, rc);
    CHECK(a.best_makespan == b.best_makespan);
    CHECK(a.best_trial == b.best_trial);
    CHECK(a.assignment == b.assignment);

    // x = 1 everywhere: every trial is the same all-fast schedule.
    for (const auto& trial : a.trials) CHECK(trial.n_s == 5);

    RoundingConfig one;
    one.seed = 3;
    one.trials = 1;
    auto c = rounding_pipeline(inst, one);
    CHECK(c.trials.size() == 1);
    CHECK(c.best_trial == 0);
}
