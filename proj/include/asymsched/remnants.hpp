#pragma once

#include <optional>
#include <vector>

#include "asymsched/schedule.hpp"
#include "asymsched/task_model.hpp"

namespace asymsched {

// Non-preemptive round-based scheduler for chain collections on one fast
// processor of integer speed s and m-1 slow processors of speed 1. Guarantees
// makespan <= T_opt + 1/s.

struct RoundTrace {
    int round;                                     // 1-based
    std::vector<std::pair<int, int>> remnants;     // (chain, remaining length), sorted
    std::vector<std::pair<int, int>> fast_picks;   // (chain, task count)
    std::vector<std::pair<int, int>> slow_picks;   // (chain, machine index)
    int g;                                         // nonempty lists this round
};

struct RemnantsResult {
    Schedule schedule;
    std::vector<RoundTrace> trace;
};

// Round k occupies the nominal window [k-1, k]: the fast processor consumes
// s head tasks from the longest remnants in sorted order (i-th task of the
// round over [k-1+(i-1)/s, k-1+i/s]); each of up to m-1 slow processors then
// takes one head task from the following untouched remnants over [k-1, k].
RemnantsResult remnants_schedule(const Instance& instance);

struct GuaranteeViolation {
    Rational remnants_makespan;
    Rational t_opt;
    Rational allowed;  // t_opt + 1/s
};

// Checks the near-optimality guarantee T <= T_opt + 1/s against an exact
// optimum supplied by the oracle; a violation signals an implementation bug.
std::optional<GuaranteeViolation> check_remnants_guarantee(const Instance& instance,
                                                           const Rational& t_opt);

}  // namespace asymsched
