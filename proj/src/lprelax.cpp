#include "asymsched/lprelax.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "asymsched/bounds.hpp"
#include "asymsched/errors.hpp"

namespace asymsched {

SpeedLp build_mip(const Instance& instance) {
    auto view = instance.machines->two_speed_view();
    if (!view) throw NotTwoSpeed("the speed-assignment program needs a two-speed config");
    const TaskGraph& g = *instance.graph;
    int n = g.task_count();

    SpeedLp out;
    out.n = n;
    LinearProgram& lp = out.program;
    for (int j = 0; j < n; ++j)
        out.x_var.push_back(lp.add_var("x" + std::to_string(j), Rational(1), true));
    for (int j = 0; j < n; ++j)
        out.y_var.push_back(lp.add_var("y" + std::to_string(j), Rational(1), true));
    for (int j = 0; j < n; ++j)
        out.t_var.push_back(lp.add_var("t" + std::to_string(j)));
    out.d_var = lp.add_var("D");
    lp.objective[out.d_var] = Rational(1);

    for (int j = 0; j < n; ++j) {
        LinRow row;
        row.coeffs[out.x_var[j]] = Rational(1);
        row.coeffs[out.y_var[j]] = Rational(1);
        row.rel = Rel::Eq;
        row.rhs = Rational(1);
        row.label = "pair" + std::to_string(j);
        lp.rows.push_back(std::move(row));
    }

    {
        LinRow fast;
        Rational coef = Rational(1) / (Rational(view->m_s) * view->s);
        for (int j = 0; j < n; ++j) fast.coeffs[out.x_var[j]] = coef;
        fast.coeffs[out.d_var] = Rational(-1);
        fast.rel = Rel::Le;
        fast.rhs = Rational(0);
        fast.label = "cap_fast";
        lp.rows.push_back(std::move(fast));

        LinRow slow;
        if (view->m > view->m_s) {
            Rational scoef = Rational(1) / Rational(view->m - view->m_s);
            for (int j = 0; j < n; ++j) slow.coeffs[out.y_var[j]] = scoef;
            slow.coeffs[out.d_var] = Rational(-1);
        } else {
            // No slow machines: slow work must be zero.
            for (int j = 0; j < n; ++j) slow.coeffs[out.y_var[j]] = Rational(1);
        }
        slow.rel = Rel::Le;
        slow.rhs = Rational(0);
        slow.label = "cap_slow";
        lp.rows.push_back(std::move(slow));
    }

    Rational inv_s = Rational(1) / view->s;
    for (auto [u, v] : g.edges()) {
        LinRow row;
        row.coeffs[out.x_var[v]] = inv_s;
        row.coeffs[out.y_var[v]] = Rational(1);
        row.coeffs[out.t_var[v]] = Rational(-1);
        row.coeffs[out.t_var[u]] = Rational(1);
        row.rel = Rel::Le;
        row.rhs = Rational(0);
        row.label = "edge" + std::to_string(u) + "_" + std::to_string(v);
        lp.rows.push_back(std::move(row));
    }
    for (int j = 0; j < n; ++j) {
        if (!g.predecessors(j).empty()) continue;
        LinRow row;
        row.coeffs[out.x_var[j]] = inv_s;
        row.coeffs[out.y_var[j]] = Rational(1);
        row.coeffs[out.t_var[j]] = Rational(-1);
        row.rel = Rel::Le;
        row.rhs = Rational(0);
        row.label = "root" + std::to_string(j);
        lp.rows.push_back(std::move(row));
    }

    for (int j = 0; j < n; ++j) {
        LinRow row;
        row.coeffs[out.t_var[j]] = Rational(1);
        row.coeffs[out.d_var] = Rational(-1);
        row.rel = Rel::Le;
        row.rhs = Rational(0);
        row.label = "deadline" + std::to_string(j);
        lp.rows.push_back(std::move(row));
    }
    return out;
}

SpeedLp relax(SpeedLp program) {
    for (auto&& f : program.program.integral) f = false;
    return program;
}

namespace {

LpSolution solution_from(const SpeedLp& program, const SimplexResult& res,
                         const Instance* instance) {
    LpSolution sol;
    sol.d = res.objective;
    for (int j = 0; j < program.n; ++j) {
        sol.x.push_back(res.values[program.x_var[j]]);
        sol.t.push_back(res.values[program.t_var[j]]);
    }
    if (instance && instance->chains) {
        std::vector<Rational> cx;
        for (const auto& chain : instance->chains->chains()) {
            Rational sum(0);
            for (int t : chain) sum += sol.x[t];
            cx.push_back(sum / Rational(static_cast<long>(chain.size())));
        }
        sol.chain_x = std::move(cx);
    }
    return sol;
}

}  // namespace

LpSolution solve_lp(const SpeedLp& program, int max_n) {
    if (program.n > max_n)
        throw SizeLimitExceeded("LP guard: n = " + std::to_string(program.n) + " exceeds " +
                                std::to_string(max_n));
    auto res = solve_simplex(program.program);
    if (res.status != LpStatus::Optimal)
        throw LpInfeasible("speed-assignment relaxation did not solve to optimality");
    return solution_from(program, res, nullptr);
}

LpSolution solve_lp(const Instance& instance, int max_n) {
    if (instance.graph->task_count() > max_n)
        throw SizeLimitExceeded("LP guard: n exceeds " + std::to_string(max_n));
    SpeedLp program = relax(build_mip(instance));
    auto res = solve_simplex(program.program);
    if (res.status != LpStatus::Optimal)
        throw LpInfeasible("speed-assignment relaxation did not solve to optimality");
    return solution_from(program, res, &instance);
}

Rational chain_reduced_optimum(const Instance& instance) {
    if (!instance.is_chain_instance()) throw NotChains("chain-reduced LP needs pure chains");
    auto view = instance.machines->two_speed_view();
    if (!view) throw NotTwoSpeed("the speed-assignment program needs a two-speed config");
    const auto lengths = instance.chains->lengths();
    int r = static_cast<int>(lengths.size());

    LinearProgram lp;
    std::vector<int> xs;
    for (int i = 0; i < r; ++i) xs.push_back(lp.add_var("x" + std::to_string(i), Rational(1)));
    int d = lp.add_var("D");
    lp.objective[d] = Rational(1);

    LinRow fast;
    for (int i = 0; i < r; ++i)
        fast.coeffs[xs[i]] = Rational(lengths[i]) / (Rational(view->m_s) * view->s);
    fast.coeffs[d] = Rational(-1);
    fast.rel = Rel::Le;
    fast.rhs = Rational(0);
    lp.rows.push_back(std::move(fast));

    LinRow slow;
    Rational slow_rhs(0);
    if (view->m > view->m_s) {
        Rational inv(1, view->m - view->m_s);
        for (int i = 0; i < r; ++i) slow.coeffs[xs[i]] = -Rational(lengths[i]) * inv;
        slow.coeffs[d] = Rational(-1);
        Rational total(0);
        for (int l : lengths) total += Rational(l);
        slow_rhs = -total * inv;
    } else {
        for (int i = 0; i < r; ++i) slow.coeffs[xs[i]] = -Rational(lengths[i]);
        Rational total(0);
        for (int l : lengths) total += Rational(l);
        slow_rhs = -total;
    }
    slow.rel = Rel::Le;
    slow.rhs = slow_rhs;
    lp.rows.push_back(std::move(slow));

    // Chain completion: l_i (x_i/s + 1 - x_i) <= D.
    for (int i = 0; i < r; ++i) {
        LinRow row;
        row.coeffs[xs[i]] = Rational(lengths[i]) * (Rational(1) / view->s - Rational(1));
        row.coeffs[d] = Rational(-1);
        row.rel = Rel::Le;
        row.rhs = -Rational(lengths[i]);
        lp.rows.push_back(std::move(row));
    }

    auto res = solve_simplex(lp);
    if (res.status != LpStatus::Optimal)
        throw LpInfeasible("chain-reduced LP did not solve");
    return res.objective;
}

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

struct SplitMix {
    std::uint64_t state;
    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

// draw < x * 2^64, exactly.
bool bernoulli_hit(std::uint64_t draw, const Rational& x) {
    mpz_class lhs(mpz_class(draw >> 32) << 32);
    lhs += static_cast<unsigned long>(draw & 0xffffffffULL);
    mpz_class rhs = x.num() << 64;
    return lhs * x.den() < rhs;
}

}  // namespace

SpeedAssignment round_a1(const LpSolution& lp, std::uint64_t seed) {
    SplitMix rng{seed};
    SpeedAssignment out;
    out.reserve(lp.x.size());
    for (const auto& x : lp.x)
        out.push_back(bernoulli_hit(rng.next(), x) ? SpeedClass::Fast : SpeedClass::Slow);
    return out;
}

SpeedAssignment improve_a1_tilde(const SpeedAssignment& assignment, const ChainSet& chains) {
    SpeedAssignment out = assignment;
    for (const auto& chain : chains.chains()) {
        int fast = 0;
        for (int t : chain)
            if (assignment[t] == SpeedClass::Fast) ++fast;
        for (size_t i = 0; i < chain.size(); ++i)
            out[chain[i]] = static_cast<int>(i) < fast ? SpeedClass::Fast : SpeedClass::Slow;
    }
    return out;
}

SpeedAssignment threshold_a2(const LpSolution& lp, const SpeedAssignment& assignment,
                             const ChainSet& chains, int n) {
    if (!lp.chain_x) throw NotChains("thresholding needs the collapsed per-chain solution");
    SpeedAssignment out = assignment;
    const auto& cx = *lp.chain_x;
    for (size_t i = 0; i < chains.chains().size(); ++i) {
        if (compare_to_log_over_n(cx[i], n) < 0)
            for (int t : chains.chains()[i]) out[t] = SpeedClass::Slow;
    }
    return out;
}

Schedule speed_based_list_schedule(const Instance& instance, const SpeedAssignment& assignment) {
    auto view = instance.machines->two_speed_view();
    if (!view) throw NotTwoSpeed("speed-based list scheduling needs a two-speed config");
    const TaskGraph& g = *instance.graph;
    int n = g.task_count();
    if (static_cast<int>(assignment.size()) != n)
        throw InvalidSpec("assignment must classify every task");
    bool any_slow = std::any_of(assignment.begin(), assignment.end(),
                                [](SpeedClass c) { return c == SpeedClass::Slow; });
    if (any_slow && view->m == view->m_s)
        throw NoSlowMachines("tasks assigned slow but the config has no slow machines");

    // Priority: (chain, position) when a chain view exists, else task id.
    std::vector<long> priority(n);
    for (int j = 0; j < n; ++j) {
        if (instance.chains && instance.chains->chain_of(j) >= 0)
            priority[j] = static_cast<long>(instance.chains->chain_of(j)) * (n + 1) +
                          instance.chains->position_of(j);
        else
            priority[j] = j;
    }

    Schedule sched;
    sched.graph = instance.graph;
    sched.machines = instance.machines;

    int m = view->m;
    std::vector<Rational> free_at(m, Rational(0));
    std::vector<int> missing(n);
    std::vector<Rational> ready_time(n, Rational(0));
    for (int j = 0; j < n; ++j) missing[j] = static_cast<int>(g.predecessors(j).size());
    std::set<int> available;
    for (int j = 0; j < n; ++j)
        if (missing[j] == 0) available.insert(j);
    std::vector<bool> done(n, false);

    Rational now(0);
    int scheduled = 0;
    std::vector<std::pair<Rational, int>> running;  // (end, task)

    while (scheduled < n) {
        // Assign in priority order among tasks available now whose class has a
        // machine free now.
        bool progress = true;
        while (progress) {
            progress = false;
            int best = -1;
            for (int j : available) {
                if (ready_time[j] > now) continue;
                bool fast = assignment[j] == SpeedClass::Fast;
                int lo = fast ? 0 : view->m_s;
                int hi = fast ? view->m_s : m;
                int machine = -1;
                for (int k = lo; k < hi; ++k)
                    if (free_at[k] <= now) {
                        machine = k;
                        break;
                    }
                if (machine < 0) continue;
                if (best < 0 || priority[j] < priority[best]) best = j;
            }
            if (best >= 0) {
                bool fast = assignment[best] == SpeedClass::Fast;
                int lo = fast ? 0 : view->m_s;
                int hi = fast ? view->m_s : m;
                int machine = -1;
                for (int k = lo; k < hi; ++k)
                    if (free_at[k] <= now) {
                        machine = k;
                        break;
                    }
                Rational dur = fast ? Rational(1) / view->s : Rational(1);
                Rational end = now + dur;
                sched.segments.push_back(Segment{best, machine, now, end});
                free_at[machine] = end;
                running.emplace_back(end, best);
                available.erase(best);
                ++scheduled;
                progress = true;
            }
        }
        if (scheduled >= n) break;

        // Advance to the next completion event.
        Rational next_event(0);
        bool have = false;
        for (const auto& [end, task] : running)
            if (end > now && (!have || end < next_event)) {
                next_event = end;
                have = true;
            }
        if (!have) throw SchedError("list scheduling stalled; no running task to wait for");
        now = next_event;
        for (const auto& [end, task] : running) {
            if (end != now || done[task]) continue;
            done[task] = true;
            for (int succ : g.successors(task)) {
                ready_time[succ] = max(ready_time[succ], end);
                if (--missing[succ] == 0) available.insert(succ);
            }
        }
    }
    return sched;
}

RoundingOutcome rounding_pipeline(const Instance& instance, const RoundingConfig& config,
                                  int max_n) {
    int n = instance.graph->task_count();
    int trials = config.trials > 0 ? config.trials : std::min(20 * std::max(n, 1), 100000);
    LpSolution lp = solve_lp(instance, max_n);
    bool chain_mode = instance.is_chain_instance();

    RoundingOutcome outcome;
    outcome.trials.reserve(trials);
    for (int trial = 0; trial < trials; ++trial) {
        std::uint64_t trial_seed = mix64(config.seed ^ static_cast<std::uint64_t>(trial));
        SpeedAssignment assignment = round_a1(lp, trial_seed);
        if (chain_mode) {
            assignment = improve_a1_tilde(assignment, *instance.chains);
            if (config.a2_threshold_enabled)
                assignment = threshold_a2(lp, assignment, *instance.chains, n);
        }
        Schedule sched = speed_based_list_schedule(instance, assignment);
        Rational ms = makespan(sched);

        TrialRecord rec;
        rec.trial = trial;
        rec.trial_makespan = ms;
        rec.n_s = 0;
        for (auto c : assignment)
            if (c == SpeedClass::Fast) ++rec.n_s;
        auto lbq = list_bound_quantities(*instance.graph, assignment, *instance.machines);
        rec.C = lbq.C;
        rec.D_s = lbq.D_s;
        rec.D_1 = lbq.D_1;
        outcome.trials.push_back(rec);

        if (outcome.best_trial < 0 || ms < outcome.best_makespan) {
            outcome.best_trial = trial;
            outcome.best_makespan = ms;
            outcome.assignment = assignment;
            outcome.schedule = std::move(sched);
        }
    }

    if (instance.chains) {
        for (const auto& chain : instance.chains->chains()) {
            int fast = 0;
            for (int t : chain)
                if (outcome.assignment[t] == SpeedClass::Fast) ++fast;
            outcome.chain_fast_slow.emplace_back(fast, static_cast<int>(chain.size()) - fast);
        }
    }
    return outcome;
}

}  // namespace asymsched
