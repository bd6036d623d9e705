#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "asymsched/rational.hpp"
#include "asymsched/task_model.hpp"

namespace asymsched {

// One contiguous piece of processing: task runs on machine over [start, end).
// Touching endpoints are not overlaps (half-open semantics).
struct Segment {
    int task;
    int machine;
    Rational start;
    Rational end;
};

// A (possibly preemptive) schedule over exact-rational time. Valid schedules
// satisfy, for every task, sum over its segments of duration x machine speed
// = 1 (unit work), plus machine-disjointness, task-self-disjointness and
// precedence. Immutable by convention once validated.
struct Schedule {
    std::shared_ptr<const TaskGraph> graph;
    std::shared_ptr<const MachineConfig> machines;
    std::vector<Segment> segments;
};

enum class ViolationKind { MachineOverlap, TaskSelfOverlap, WorkMismatch, PrecedenceViolation };

struct Violation {
    ViolationKind kind;
    int a = -1;            // machine (overlap) / task (self-overlap, work) / edge tail
    int b = -1;            // second task or edge head
    Rational detail;       // total work for WorkMismatch
    std::string describe() const;
};

// Checks the four schedule invariants in a fixed order and returns the first
// violation found (with its witness), or nullopt when valid.
std::optional<Violation> validate(const Schedule& schedule);

// Max segment end; 0 for an empty schedule.
Rational makespan(const Schedule& schedule);

// Exact energy: sum over segments of speed^alpha x duration. Integer alpha is
// always exact; fractional alpha requires every used speed to have a rational
// alpha-th power, else NonRepresentablePower is thrown.
Rational energy(const Schedule& schedule, const Rational& alpha);
Rational energy(const Schedule& schedule, const EnergyParams& params);

// Approximate mode for fractional alpha: speed^alpha in fixed-precision
// binary (64 fractional bits, round-to-nearest), then exact accumulation.
Rational energy_approx(const Schedule& schedule, const Rational& alpha);

// Event-free intervals: breakpoints are the sorted distinct segment endpoints
// (plus 0); within an interval no segment starts or ends. occupancy[i][k] is
// the task on machine k during interval i, or -1 when idle.
struct Timeline {
    std::vector<Rational> breakpoints;
    std::vector<std::vector<int>> occupancy;
};

Timeline build_timeline(const Schedule& schedule);

// Maximal windows of constant supported set. The supported set at time t is
// every task whose predecessors have all completed (covering completed,
// running and ready tasks); it grows exactly at completions that enable some
// task, so those completions plus 0 and the makespan bound the blocks.
struct Block {
    Rational start;
    Rational end;
};

std::vector<Block> supported_set_blocks(const Schedule& schedule);

// One line per machine; for human eyes only, not bit-exact.
std::string render_gantt(const Schedule& schedule);

}  // namespace asymsched
