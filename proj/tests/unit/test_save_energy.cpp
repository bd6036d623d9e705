#include <doctest.h>

#include "asymsched/errors.hpp"
#include "asymsched/lprelax.hpp"
#include "asymsched/remnants.hpp"
#include "asymsched/save_energy.hpp"
#include "support/corpus.hpp"

using namespace asymsched;

namespace {

Schedule make_two_task_schedule() {
    // Tasks A=0, B=1 independent; speeds (2,1); A on fast [0,1/2], B on fast
    // [1/2,1], slow idle [0,1].
    Schedule s;
    s.graph = std::make_shared<TaskGraph>(TaskGraph::validate_dag(2, {}));
    s.machines =
        std::make_shared<MachineConfig>(std::vector<Rational>{Rational(2), Rational(1)});
    s.segments = {{0, 0, Rational(0), Rational(1, 2)}, {1, 0, Rational(1, 2), Rational(1)}};
    return s;
}

}  // namespace

TEST_CASE("[save-energy] optimal target speed") {
    EnergyParams a2{Rational(2)};
    CHECK(optimal_target_speed(Rational(4), a2) == Rational(2));
    CHECK(optimal_target_speed(Rational(1), a2) == Rational(1, 2));

    // alpha = 3, c_u = 3: target is sqrt(3) ~ 1.7320508.
    EnergyParams a3{Rational(3)};
    Rational t = optimal_target_speed(Rational(3), a3);
    CHECK(t > Rational(17320508, 10000000));
    CHECK(t < Rational(17320509, 10000000));
}

TEST_CASE("[save-energy] the saving expression is maximized nearest the target") {
    // saving(c_v) = c_v * t_j * (c_u^(a-1) - c_v^(a-1)); on integer grids the
    // best candidate is the one closest to the analytic target.
    for (long alpha : {2L, 3L}) {
        EnergyParams params{Rational(alpha)};
        for (long cu = 2; cu <= 12; ++cu) {
            Rational best_saving(-1);
            Rational best_speed(0);
            std::vector<Rational> candidates;
            for (long cv = 1; cv < cu; ++cv) candidates.push_back(Rational(cv));
            for (const auto& cv : candidates) {
                Rational saving =
                    cv * (Rational(cu).pow_int(alpha - 1) - cv.pow_int(alpha - 1));
                if (saving > best_saving) {
                    best_saving = saving;
                    best_speed = cv;
                }
            }
            for (const auto& cv : candidates) {
                if (cv == best_speed) continue;
                // No candidate may be strictly closer to the target than the
                // saving maximizer.
                CHECK(compare_target_distance(Rational(cu), cv, best_speed, params) >= 0);
            }
        }
    }
}

TEST_CASE("[save-energy] enumerate_moves finds the full move to the idle slow machine") {
    auto s = make_two_task_schedule();
    auto blocks = supported_set_blocks(s);
    REQUIRE(blocks.size() == 1);  // independent tasks: one block
    auto moves = enumerate_moves(s, EnergyParams{Rational(2)}, blocks[0]);
    REQUIRE(!moves.empty());
    const auto& mv = moves.front();
    CHECK(mv.task == 0);
    CHECK(mv.target.machine == 1);
    CHECK(mv.placed_start == Rational(0));
    CHECK(mv.placed_end == Rational(1));
    CHECK(mv.energy_delta == Rational(-1));
}

TEST_CASE("[save-energy] no moves exist from the slowest machine") {
    Schedule s;
    s.graph = std::make_shared<TaskGraph>(TaskGraph::validate_dag(1, {}));
    s.machines =
        std::make_shared<MachineConfig>(std::vector<Rational>{Rational(2), Rational(1)});
    s.segments = {{0, 1, Rational(0), Rational(1)}};
    auto blocks = supported_set_blocks(s);
    REQUIRE(blocks.size() == 1);
    CHECK(enumerate_moves(s, EnergyParams{Rational(2)}, blocks[0]).empty());
}

TEST_CASE("[save-energy] partial fit splits the source at the work boundary") {
    // Task 0 on fast [0,1/2]; slow busy with task 1 over [1/4, 5/4], so the
    // only slow hole is [0,1/4]. The head of task 0 moves there, splitting the
    // source at 1/8 (work c_v * t_j = 1/4, freed duration 1/8).
    Schedule s;
    s.graph = std::make_shared<TaskGraph>(TaskGraph::validate_dag(2, {}));
    s.machines =
        std::make_shared<MachineConfig>(std::vector<Rational>{Rational(2), Rational(1)});
    s.segments = {{0, 0, Rational(0), Rational(1, 2)}, {1, 1, Rational(1, 4), Rational(5, 4)}};
    REQUIRE(!validate(s).has_value());
    auto blocks = supported_set_blocks(s);
    REQUIRE(blocks.size() == 1);
    auto moves = enumerate_moves(s, EnergyParams{Rational(2)}, blocks[0]);
    REQUIRE(!moves.empty());
    const auto& mv = moves.front();
    CHECK(mv.task == 0);
    CHECK(mv.kind == FitKind::PartialHead);
    CHECK(mv.placed_start == Rational(0));
    CHECK(mv.placed_end == Rational(1, 4));
    CHECK(mv.moved_work == Rational(1, 4));
    // Freed duration on the fast machine = moved work / c_u = 1/8.
    CHECK(mv.moved_work / Rational(2) == Rational(1, 8));
    auto applied = apply_move(s, mv);
    CHECK(!validate(applied).has_value());
    CHECK(makespan(applied) == makespan(s));
    CHECK(energy(applied, Rational(2)) == energy(s, Rational(2)) + mv.energy_delta);
}

TEST_CASE("[save-energy] worked two-task instance reaches energy 3") {
    auto s = make_two_task_schedule();
    EnergyParams params{Rational(2)};
    CHECK(energy(s, params) == Rational(4));
    auto out = save_energy(s, params);
    CHECK(!validate(out).has_value());
    CHECK(makespan(out) == Rational(1));
    CHECK(energy(out, params) == Rational(3));
    CHECK(!verify_local_optimality(out, params).has_value());
}

TEST_CASE("[save-energy] symmetric machines leave the schedule unchanged") {
    Schedule s;
    s.graph = std::make_shared<TaskGraph>(TaskGraph::validate_dag(2, {}));
    s.machines =
        std::make_shared<MachineConfig>(std::vector<Rational>{Rational(1), Rational(1)});
    s.segments = {{0, 0, Rational(0), Rational(1)}, {1, 1, Rational(0), Rational(1)}};
    EnergyParams params{Rational(2)};
    auto out = save_energy(s, params);
    CHECK(energy(out, params) == energy(s, params));
    CHECK(out.segments.size() == s.segments.size());
}

TEST_CASE("[save-energy] the makespan constraint can block the only move") {
    Schedule s;
    s.graph = std::make_shared<TaskGraph>(TaskGraph::validate_dag(1, {}));
    s.machines =
        std::make_shared<MachineConfig>(std::vector<Rational>{Rational(2), Rational(1)});
    s.segments = {{0, 0, Rational(0), Rational(1, 2)}};
    EnergyParams params{Rational(2)};
    auto out = save_energy(s, params);
    CHECK(makespan(out) == Rational(1, 2));
    CHECK(energy(out, params) == Rational(2));  // unchanged: slow needs duration 1
}

TEST_CASE("[save-energy] verify returns the pending move before optimization") {
    auto s = make_two_task_schedule();
    EnergyParams params{Rational(2)};
    auto pending = verify_local_optimality(s, params);
    REQUIRE(pending.has_value());
    CHECK(pending->task == 0);
    CHECK(pending->target.machine == 1);
    CHECK(!verify_local_optimality(save_energy(s, params), params).has_value());
}

TEST_CASE("[save-energy] empty schedule is trivially locally optimal") {
    Schedule s;
    s.graph = std::make_shared<TaskGraph>(TaskGraph::validate_dag(0, {}));
    s.machines =
        std::make_shared<MachineConfig>(std::vector<Rational>{Rational(2), Rational(1)});
    CHECK(!verify_local_optimality(s, EnergyParams{Rational(2)}).has_value());
}

TEST_CASE("[save-energy] contracts on remnants and list outputs") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        auto inst = testsupport::random_single_fast_chains(seed, 10, 3);
        auto base = remnants_schedule(inst).schedule;
        for (long alpha : {2L, 3L}) {
            EnergyParams params{Rational(alpha)};
            auto out = save_energy(base, params);
            CHECK(!validate(out).has_value());
            CHECK(makespan(out) <= makespan(base));
            CHECK(energy(out, params) <= energy(base, params));
            CHECK(!verify_local_optimality(out, params).has_value());
            // Idempotence in energy value.
            auto again = save_energy(out, params);
            CHECK(energy(again, params) == energy(out, params));
        }
    }
}
