#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "asymsched/lp.hpp"
#include "asymsched/schedule.hpp"
#include "asymsched/task_model.hpp"

namespace asymsched {

// Speed-assignment pipeline: build the MIP over {fast, slow} assignments,
// solve its LP relaxation exactly, round randomly, improve per chain,
// optionally threshold short-chain probabilities, and schedule each draw with
// speed-based list scheduling.

inline constexpr int kDefaultLpGuard = 200;

struct SpeedLp {
    LinearProgram program;
    int n = 0;
    std::vector<int> x_var, y_var, t_var;
    int d_var = -1;
};

// min D subject to: x_j + y_j = 1; sum x_j/(m_s s) <= D; sum y_j/(m-m_s) <= D
// (or sum y_j <= 0 when no slow machines exist); x_j/s + y_j <= t_j - t_j'
// per immediate-predecessor edge, plus the root form x_j/s + y_j <= t_j for
// predecessor-free tasks; t_j <= D. x, y are binary in the MIP and relax to
// [0,1].
SpeedLp build_mip(const Instance& instance);
SpeedLp relax(SpeedLp program);

struct LpSolution {
    std::vector<Rational> x;        // per task, in [0,1]; y = 1 - x
    std::vector<Rational> t;        // per task completion variables
    Rational d;                     // optimal relaxed objective
    std::optional<std::vector<Rational>> chain_x;  // per-chain average when chains exist
};

LpSolution solve_lp(const SpeedLp& program, int max_n = kDefaultLpGuard);
LpSolution solve_lp(const Instance& instance, int max_n = kDefaultLpGuard);

// Optimal value of the chain-collapsed LP (one x per chain); equals the full
// relaxation's optimum on chain instances.
Rational chain_reduced_optimum(const Instance& instance);

// splitmix64 avalanche step; the documented per-trial stream split is
// mix64(seed ^ trial).
std::uint64_t mix64(std::uint64_t z);

// Independent per-task Bernoulli draws: task j fast with probability x_j,
// decided by an exact comparison of a 64-bit draw against x_j * 2^64.
SpeedAssignment round_a1(const LpSolution& lp, std::uint64_t seed);

// Per chain, keep the drawn fast count but move it to the chain prefix.
SpeedAssignment improve_a1_tilde(const SpeedAssignment& assignment, const ChainSet& chains);

// Chains whose collapsed x is below ln(n)/n are forced entirely slow.
SpeedAssignment threshold_a2(const LpSolution& lp, const SpeedAssignment& assignment,
                             const ChainSet& chains, int n);

// Non-preemptive event-driven list scheduling where a free machine only takes
// available tasks of its own speed class. Priority: chain index then position
// when chains exist, else task id.
Schedule speed_based_list_schedule(const Instance& instance, const SpeedAssignment& assignment);

struct RoundingConfig {
    std::uint64_t seed = 0;
    int trials = 0;      // 0 means the default 20*n capped at 100000
    bool a2_threshold_enabled = false;
    Rational gamma{0};   // informational only (asymptotic hypothesis)
    Rational beta{0};    // informational only
};

struct TrialRecord {
    int trial;
    Rational trial_makespan;
    int n_s;
    Rational C, D_s, D_1;
};

struct RoundingOutcome {
    SpeedAssignment assignment;
    Schedule schedule;
    Rational best_makespan;
    int best_trial = -1;
    std::vector<std::pair<int, int>> chain_fast_slow;  // (l_i^1, l_i^2) per chain
    std::vector<TrialRecord> trials;
};

// Solve the LP once, run `trials` independent seeded roundings (A1 -> A1~ ->
// optional A2~ on chain instances; plain A1 on general DAGs), schedule each,
// and keep the best makespan (ties to the lowest trial index). Deterministic
// given the seed, regardless of evaluation order.
RoundingOutcome rounding_pipeline(const Instance& instance, const RoundingConfig& config,
                                  int max_n = kDefaultLpGuard);

}  // namespace asymsched
