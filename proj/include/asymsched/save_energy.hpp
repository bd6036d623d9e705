#pragma once

#include <optional>
#include <vector>

#include "asymsched/schedule.hpp"
#include "asymsched/task_model.hpp"

namespace asymsched {

// Preemptive energy post-processing: within each supported-set block, move
// work fragments onto strictly slower machines whenever that preserves every
// schedule invariant and the makespan. Any such move saves energy because
// power is speed^alpha with alpha > 1; the per-move hole choice follows the
// energy-optimal target speed.

struct Hole {
    int machine;
    Rational start;
    Rational end;
    Rational speed;
};

enum class FitKind { Exact, Slack, PartialTail, PartialHead };

struct MoveCandidate {
    int parent_segment;      // index into schedule.segments
    int task;
    int source_machine;
    Rational source_start, source_end;  // the in-block fragment being drained
    Hole target;
    Rational placed_start, placed_end;  // the piece created inside the hole
    Rational moved_work;
    Rational energy_delta;   // negative; exact for integer alpha
    FitKind kind;
    // Partial fits keep the rest of the fragment on the source machine.
    std::optional<Rational> remainder_start, remainder_end;
};

// The speed that maximizes the per-move saving: (1/alpha)^(1/(alpha-1)) *
// c_u. Exact when that root is rational (alpha = 2 gives c_u/2 exactly);
// otherwise the fixed-precision approximate mode, which is only ever used to
// rank candidate holes.
Rational optimal_target_speed(const Rational& c_u, const EnergyParams& params);

// -1 / 0 / +1: is speed `a` closer to the target for source speed c_u than
// speed `b`? Exact for integer alpha.
int compare_target_distance(const Rational& c_u, const Rational& a, const Rational& b,
                            const EnergyParams& params);

// All admissible single-piece moves inside one block, best-ranked first:
// fragments in time order, then holes by distance to the target speed
// (ties toward the lower speed, then the earlier hole). Every candidate
// strictly reduces energy and is verified to keep the schedule valid and the
// makespan un-increased.
std::vector<MoveCandidate> enumerate_moves(const Schedule& schedule, const EnergyParams& params,
                                           const Block& block);

Schedule apply_move(const Schedule& schedule, const MoveCandidate& move);

// Fixed-point driver: repeatedly apply the best admissible move, scanning
// blocks left to right and speed classes from the second-fastest downward,
// until no move exists in any block. Never increases makespan or energy.
Schedule save_energy(const Schedule& schedule, const EnergyParams& params);

// Exhaustive single-move search over every block; nullopt means the
// schedule satisfies the local-optimality condition. A candidate returned
// for a save_energy output signals an implementation bug.
std::optional<MoveCandidate> verify_local_optimality(const Schedule& schedule,
                                                     const EnergyParams& params);

}  // namespace asymsched
