#include "asymsched/remnants.hpp"

#include <algorithm>
#include <numeric>

#include "asymsched/errors.hpp"

namespace asymsched {

RemnantsResult remnants_schedule(const Instance& instance) {
    if (!instance.chains) throw NotChains("remnants needs a chain collection");
    if (!instance.chains->cross_edges().empty())
        throw CrossChainEdges("remnants is defined for independent chains only");
    auto view = instance.machines->two_speed_view();
    if (!view || view->m_s != 1)
        throw NotSingleFast("remnants needs exactly one fast processor");
    if (!view->s.is_integer())
        throw NonIntegerSpeed("remnants counts whole tasks; fast speed must be an integer");
    long s = view->s.num_long();
    int m = view->m;

    const auto& chains = instance.chains->chains();
    int r = static_cast<int>(chains.size());
    std::vector<int> consumed(r, 0);  // tasks already scheduled per chain

    RemnantsResult result;
    result.schedule.graph = instance.graph;
    result.schedule.machines = instance.machines;

    for (int k = 1;; ++k) {
        // Nonempty remnants sorted by remaining length descending, stable by
        // original chain index.
        std::vector<int> order;
        for (int i = 0; i < r; ++i)
            if (consumed[i] < static_cast<int>(chains[i].size())) order.push_back(i);
        if (order.empty()) break;
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            int ra = static_cast<int>(chains[a].size()) - consumed[a];
            int rb = static_cast<int>(chains[b].size()) - consumed[b];
            return ra > rb;
        });
        int g = static_cast<int>(order.size());

        RoundTrace trace;
        trace.round = k;
        trace.g = g;
        for (int idx : order)
            trace.remnants.emplace_back(idx, static_cast<int>(chains[idx].size()) - consumed[idx]);

        Rational round_start(k - 1);

        // Fast processor: sequentially up to s head tasks from remnants in order.
        long u = s;
        int v = 0;  // index into `order`
        long done_this_round = 0;
        while (u > 0 && v < g) {
            int chain = order[v];
            long remaining = static_cast<long>(chains[chain].size()) - consumed[chain];
            long p = std::min(u, remaining);
            for (long i = 0; i < p; ++i) {
                int task = chains[chain][consumed[chain] + static_cast<int>(i)];
                Rational start = round_start + Rational(done_this_round + i, s);
                Rational end = round_start + Rational(done_this_round + i + 1, s);
                result.schedule.segments.push_back(Segment{task, 0, start, end});
            }
            consumed[chain] += static_cast<int>(p);
            done_this_round += p;
            trace.fast_picks.emplace_back(chain, static_cast<int>(p));
            u -= p;
            ++v;
        }

        // Slow processors: one head task each from the next remnants the fast
        // processor did not touch this round.
        int slots = m - 1;
        for (int w = v; w < g && slots > 0; ++w, --slots) {
            int chain = order[w];
            int machine = m - slots;  // 1..m-1 in order
            int task = chains[chain][consumed[chain]];
            consumed[chain] += 1;
            result.schedule.segments.push_back(
                Segment{task, machine, round_start, round_start + Rational(1)});
            trace.slow_picks.emplace_back(chain, machine);
        }

        result.trace.push_back(std::move(trace));
    }
    return result;
}

std::optional<GuaranteeViolation> check_remnants_guarantee(const Instance& instance,
                                                           const Rational& t_opt) {
    auto result = remnants_schedule(instance);
    Rational t = makespan(result.schedule);
    Rational allowed = t_opt + Rational(1) / instance.machines->two_speed_view()->s;
    if (t > allowed) return GuaranteeViolation{t, t_opt, allowed};
    return std::nullopt;
}

}  // namespace asymsched
