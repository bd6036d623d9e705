#include "asymsched/bounds.hpp"

#include <algorithm>

#include "asymsched/errors.hpp"

namespace asymsched {

namespace {

TwoSpeedView require_two_speed(const MachineConfig& config) {
    auto view = config.two_speed_view();
    if (!view) throw NotTwoSpeed("operation requires a two-speed machine config");
    return *view;
}

}  // namespace

Rational bound_A(int n, const MachineConfig& config) {
    auto view = require_two_speed(config);
    if (n == 0) return Rational(0);
    Rational denom = Rational(view.m_s) * view.s + Rational(view.m - view.m_s);
    return Rational(n) / denom;
}

Rational bound_B_general(const std::vector<int>& chain_lengths, const MachineConfig& config) {
    if (chain_lengths.empty()) return Rational(0);
    int r = static_cast<int>(chain_lengths.size());
    int m = config.machine_count();
    Rational best(0);
    Rational load(0), cap(0);
    for (int j = 1; j <= std::min(r, m); ++j) {
        load += Rational(chain_lengths[j - 1]);
        cap += config.speed(j - 1);
        best = max(best, load / cap);
    }
    return best;
}

Rational bound_B_paper_two_speed(const std::vector<int>& chain_lengths,
                                 const MachineConfig& config) {
    auto view = require_two_speed(config);
    int r = static_cast<int>(chain_lengths.size());
    if (view.m_s >= r)
        throw NotEnoughChains("specialized B needs m_s < r (the interesting case)");
    Rational l_s(0);
    for (int i = 0; i < view.m_s; ++i) l_s += Rational(chain_lengths[i]);
    Rational best(0);
    Rational tail(0);
    bool any = false;
    for (int j = view.m_s + 1; j <= std::min(r, view.m); ++j) {
        tail += Rational(chain_lengths[j - 1]);
        Rational denom = Rational(view.m_s) * (view.s - Rational(1)) + Rational(j - 1);
        Rational value = (l_s + tail) / denom;
        best = any ? max(best, value) : value;
        any = true;
    }
    return best;
}

Rational bound_single_fast(int n, int r, const MachineConfig& config) {
    auto view = require_two_speed(config);
    if (view.m_s != 1) throw NotSingleFast("bound requires exactly one fast processor");
    Rational denom = view.s + Rational(std::min(r - 1, view.m));
    return Rational(n) / denom;
}

BoundReport bound_report(const Instance& instance) {
    BoundReport report;
    int n = instance.graph->task_count();
    std::vector<int> lengths;
    if (instance.chains) {
        lengths = instance.chains->lengths();
    } else {
        lengths = decompose_chains(*instance.graph).lengths();
    }
    int r = static_cast<int>(lengths.size());

    report.B_general = bound_B_general(lengths, *instance.machines);

    // Average load n/p is a valid lower bound for any speed vector and
    // coincides with the two-speed formula when that view exists.
    report.A = Rational(n) / instance.machines->total_capability();
    report.max_lower = max(report.A, report.B_general);

    auto view = instance.machines->two_speed_view();
    if (view) {
        if (view->m_s < r)
            report.B_paper_two_speed = bound_B_paper_two_speed(lengths, *instance.machines);
        if (view->m_s == 1 && r >= 1) {
            report.single_fast = bound_single_fast(n, r, *instance.machines);
            report.max_lower = max(report.max_lower, *report.single_fast);
        }
    }
    return report;
}

ListBoundReport list_bound_quantities(const TaskGraph& graph, const SpeedAssignment& assignment,
                                      const MachineConfig& config) {
    auto view = require_two_speed(config);
    int n = graph.task_count();
    if (static_cast<int>(assignment.size()) != n)
        throw InvalidSpec("assignment must classify every task");

    int n_s = 0;
    for (auto cls : assignment)
        if (cls == SpeedClass::Fast) ++n_s;
    if (n_s < n && view.m == view.m_s)
        throw NoSlowMachines("tasks assigned slow but the config has no slow machines");

    ListBoundReport report;
    report.n_s = n_s;
    report.D_s = Rational(n_s) / (view.s * Rational(view.m_s));
    report.D_1 = (n == n_s) ? Rational(0) : Rational(n - n_s) / Rational(view.m - view.m_s);

    // Longest path under node weights 1/c(class of j).
    std::vector<Rational> acc(n, Rational(0));
    report.C = Rational(0);
    for (int u : graph.topological_order()) {
        Rational w = assignment[u] == SpeedClass::Fast ? Rational(1) / view.s : Rational(1);
        acc[u] += w;
        report.C = max(report.C, acc[u]);
        for (int v : graph.successors(u)) acc[v] = max(acc[v], acc[u]);
    }
    return report;
}

}  // namespace asymsched
