#pragma once

#include <optional>
#include <utility>

#include "asymsched/schedule.hpp"
#include "asymsched/task_model.hpp"

namespace asymsched {

// Ground truth at desk scale: exact optimal non-preemptive makespan by
// branch-and-bound, exhaustive preemptive energy search on a rational grid,
// and the symmetric-to-asymmetric schedule transformation.

struct OracleLimits {
    int max_n = 14;
    int max_m = 4;
};

// Minimum makespan over all non-preemptive schedules, exact. Search is over
// left-shifted schedules (assignment + per-machine order), which preserve the
// optimum; deliberate idling is covered because any schedule left-shifts
// without growing its makespan.
Rational exact_optimal_makespan(const Instance& instance, const OracleLimits& limits = {});

// Same search, also returning one optimal schedule.
std::pair<Rational, Schedule> exact_optimal_schedule(const Instance& instance,
                                                     const OracleLimits& limits = {});

// Minimum energy over all valid preemptive schedules with segment endpoints
// on the rational grid of step 1/(s * L), where s scales with the speed
// numerators and L collects the denominators present (speeds, cap, and any
// extra denominator the caller wants representable, e.g. an optimizer
// output's breakpoints). Guarded to n <= 4, m <= 3. `achievable_hint`, when
// given, must be the energy of some schedule on that grid; it seeds the
// search's incumbent and never changes the result.
Rational exhaustive_min_energy(const Instance& instance, const EnergyParams& params,
                               const Rational& makespan_cap,
                               const mpz_class& extra_denominator = 1,
                               const std::optional<Rational>& achievable_hint = std::nullopt);

// Exact minimum energy over all valid preemptive schedules with makespan <=
// cap, with no grid restriction: the value the grid search refines toward.
// Enumerates completion-event orders and solves one small exact LP each;
// within an event-free window, per-machine and per-task loads bounded by the
// window length are always realizable preemptively, so the LP relaxation is
// tight. Guarded to n <= 4, m <= 3 like the grid search.
Rational min_energy_preemptive(const Instance& instance, const EnergyParams& params,
                               const Rational& makespan_cap);

struct SymmetricConfig {
    int m;
    Rational speed;  // uniform speed s'
};

// Realizes the rotation construction: per event-free interval with k active
// tasks, run them on the k fastest target machines in k equal sub-slices,
// rotating task->machine cyclically so each task sees every speed once; the
// interval shrinks by the ratio of average speeds and later work compacts
// left. Preserves per-task work exactly and never increases the makespan.
Schedule asymmetrize(const Schedule& symmetric_schedule, const SymmetricConfig& sym,
                     std::shared_ptr<const MachineConfig> target);

struct DominanceReport {
    Rational symmetric_optimum;
    Rational transformed_makespan;
    bool ok;             // transformed <= symmetric optimum
    bool strict;         // transformed < symmetric optimum
    bool sym_had_idle;   // the transformed symmetric-optimal schedule had idle time
};

// Computes the exact symmetric optimum, transforms that schedule to the
// target speeds, and compares makespans. A failure signals an implementation
// bug, not an input error.
DominanceReport check_asym_dominance(const Instance& instance, const SymmetricConfig& sym,
                                     std::shared_ptr<const MachineConfig> target,
                                     const OracleLimits& limits = {});

}  // namespace asymsched
