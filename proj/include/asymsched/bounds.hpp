#pragma once

#include <optional>

#include "asymsched/rational.hpp"
#include "asymsched/task_model.hpp"

namespace asymsched {

// Closed-form lower bounds on the optimal makespan and the list-scheduling
// upper-bound quantities.

struct BoundReport {
    Rational A;
    Rational B_general;
    std::optional<Rational> B_paper_two_speed;
    std::optional<Rational> single_fast;
    Rational max_lower;  // max of A, B_general and single_fast when present
};

// Average-load bound n / (m_s*s + m - m_s). Requires the two-speed view.
Rational bound_A(int n, const MachineConfig& config);

// Prefix-ratio bound max_{1<=j<=min(r,m)} (sum of j longest chains) /
// (sum of j fastest speeds). Valid for any speed vector.
Rational bound_B_general(const std::vector<int>& chain_lengths, const MachineConfig& config);

// The specialized two-speed variant with its printed denominator
// m_s*(s-1)+j-1, kept verbatim for fidelity; B_general is the normative bound.
Rational bound_B_paper_two_speed(const std::vector<int>& chain_lengths,
                                 const MachineConfig& config);

// Single-fast-processor bound n / (s + min(r-1, m)); requires m_s = 1.
Rational bound_single_fast(int n, int r, const MachineConfig& config);

// All applicable lower bounds for an instance. B uses the instance's chain
// view (decomposing when absent); for DAGs the decomposition is a relaxation,
// so B stays a valid lower bound.
BoundReport bound_report(const Instance& instance);

struct ListBoundReport {
    Rational C;    // max over directed paths of sum 1/c(j)
    Rational D_s;  // n_s / (s * m_s)
    Rational D_1;  // (n - n_s) / (m - m_s)
    int n_s;       // tasks assigned fast
    Rational sum() const { return C + D_s + D_1; }
};

// The quantities of the specialized list-scheduling bound T <= C + D_s + D_1
// for a two-speed config and a total speed assignment. For DAGs, C is the
// longest path under weights 1/c(class of j).
ListBoundReport list_bound_quantities(const TaskGraph& graph, const SpeedAssignment& assignment,
                                      const MachineConfig& config);

}  // namespace asymsched
