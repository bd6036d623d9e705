#include "asymsched/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "asymsched/errors.hpp"
#include "asymsched/lp.hpp"

namespace asymsched {

namespace {

struct VecHash {
    size_t operator()(const std::vector<long>& v) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (long x : v) {
            h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<size_t>(h);
    }
};

// Branch-and-bound over (machine assignment, per-machine order) with
// left-shifted timing, on integer-scaled time.
class MakespanSearch {
public:
    MakespanSearch(const Instance& instance, const OracleLimits& limits)
        : graph_(*instance.graph), machines_(*instance.machines) {
        n_ = graph_.task_count();
        m_ = machines_.machine_count();
        if (n_ > limits.max_n || m_ > limits.max_m)
            throw SizeLimitExceeded("oracle guard: n <= " + std::to_string(limits.max_n) +
                                    ", m <= " + std::to_string(limits.max_m));

        // scale = lcm of speed numerators; task duration on k becomes integral.
        mpz_class scale(1);
        for (const auto& c : machines_.speeds())
            mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.num().get_mpz_t());
        scale_ = scale.get_si();
        for (const auto& c : machines_.speeds()) {
            mpz_class d = c.den() * scale / c.num();
            dur_.push_back(d.get_si());
        }
        dur_min_ = *std::min_element(dur_.begin(), dur_.end());

        pred_mask_.assign(n_, 0);
        for (auto [u, v] : graph_.edges()) pred_mask_[v] |= 1u << u;

        // tail[j]: number of tasks on the longest path starting at j.
        tail_.assign(n_, 1);
        const auto& topo = graph_.topological_order();
        for (auto it = topo.rbegin(); it != topo.rend(); ++it)
            for (int v : graph_.successors(*it))
                tail_[*it] = std::max(tail_[*it], tail_[v] + 1);

        if (instance.chains && instance.chains->cross_edges().empty()) {
            chains_ = instance.chains.get();
            // Prefix capability sums as integer fractions for the residual
            // chain bound: sum_{i<=j} c(i) = cap_num[j]/cap_den[j].
            Rational sum(0);
            for (int j = 0; j < std::min(m_, static_cast<int>(chains_->chains().size())); ++j) {
                sum += machines_.speed(j);
                cap_num_.push_back(sum.num().get_si());
                cap_den_.push_back(sum.den().get_si());
            }
        }
    }

    std::pair<Rational, Schedule> run(std::shared_ptr<const TaskGraph> graph,
                                      std::shared_ptr<const MachineConfig> machines) {
        finish_.assign(n_, 0);
        plan_machine_.assign(n_, -1);
        plan_start_.assign(n_, 0);
        best_plan_machine_.assign(n_, -1);
        best_plan_start_.assign(n_, 0);
        ready_.assign(m_, 0);

        best_ = greedy_incumbent();
        if (n_ > 0) dfs(0, 0, 0);

        Schedule sched;
        sched.graph = std::move(graph);
        sched.machines = std::move(machines);
        for (int j = 0; j < n_; ++j) {
            Rational start(best_plan_start_[j], scale_);
            Rational end(best_plan_start_[j] + dur_[best_plan_machine_[j]], scale_);
            sched.segments.push_back(Segment{j, best_plan_machine_[j], start, end});
        }
        return {Rational(best_, scale_), sched};
    }

private:
    long greedy_incumbent() {
        if (n_ == 0) return 0;
        // Event-driven highest-level-first; its plan seeds the incumbent.
        std::vector<long> ready(m_, 0), finish(n_, 0);
        std::uint32_t mask = 0;
        long horizon = 0;
        for (int step = 0; step < n_; ++step) {
            int best_task = -1, best_machine = -1;
            long best_end = 0;
            for (int j = 0; j < n_; ++j) {
                if (mask & (1u << j)) continue;
                if ((pred_mask_[j] & mask) != pred_mask_[j]) continue;
                long avail = 0;
                for (int p = 0; p < n_; ++p)
                    if (pred_mask_[j] & (1u << p)) avail = std::max(avail, finish[p]);
                for (int k = 0; k < m_; ++k) {
                    long end = std::max(avail, ready[k]) + dur_[k];
                    bool better = best_task < 0 || end < best_end ||
                                  (end == best_end && tail_[j] > tail_[best_task]);
                    if (better) {
                        best_task = j;
                        best_machine = k;
                        best_end = end;
                    }
                }
            }
            mask |= 1u << best_task;
            finish[best_task] = best_end;
            ready[best_machine] = best_end;
            best_plan_machine_[best_task] = best_machine;
            best_plan_start_[best_task] = best_end - dur_[best_machine];
            horizon = std::max(horizon, best_end);
        }
        return horizon;
    }

    bool capacity_prune(std::uint32_t mask, long current_max) {
        int remaining = n_ - __builtin_popcount(mask);
        if (remaining == 0) return false;
        long budget_end = best_ - 1;
        if (budget_end < current_max) return true;
        long cap = 0;
        for (int k = 0; k < m_; ++k) {
            long window = budget_end - ready_[k];
            if (window > 0) cap += window / dur_[k];
            if (cap >= remaining) break;
        }
        if (cap < remaining) return true;

        if (chains_) {
            // Residual prefix-ratio bound over the longest remnants.
            long t0 = *std::min_element(ready_.begin(), ready_.end());
            std::vector<long> rem;
            for (const auto& chain : chains_->chains()) {
                long left = 0;
                for (int t : chain)
                    if (!(mask & (1u << t))) ++left;
                if (left > 0) rem.push_back(left);
            }
            std::sort(rem.rbegin(), rem.rend());
            long prefix = 0;
            for (size_t j = 0; j < rem.size() && j < cap_num_.size(); ++j) {
                prefix += rem[j];
                // prune if (best-1-t0) < prefix * scale / (cap_num/cap_den)
                if ((budget_end - t0) * cap_num_[j] < prefix * scale_ * cap_den_[j]) return true;
            }
        }
        return false;
    }

    void dfs(std::uint32_t mask, long current_max, int depth) {
        if (mask == (1u << n_) - 1) {
            if (current_max < best_) {
                best_ = current_max;
                best_plan_machine_ = plan_machine_;
                best_plan_start_ = plan_start_;
            }
            return;
        }
        if (capacity_prune(mask, current_max)) return;
        if (!visit_once(mask)) return;

        struct Cand {
            int task, machine;
            long start, end;
        };
        std::vector<Cand> cands;
        for (int j = 0; j < n_; ++j) {
            if (mask & (1u << j)) continue;
            if ((pred_mask_[j] & mask) != pred_mask_[j]) continue;
            long avail = 0;
            for (int p = 0; p < n_; ++p)
                if (pred_mask_[j] & (1u << p)) avail = std::max(avail, finish_[p]);
            for (int k = 0; k < m_; ++k) {
                // Skip equal machines in identical states.
                bool dup = false;
                for (int k2 = 0; k2 < k; ++k2)
                    if (dur_[k2] == dur_[k] && ready_[k2] == ready_[k]) {
                        dup = true;
                        break;
                    }
                if (dup) continue;
                long start = std::max(avail, ready_[k]);
                long end = start + dur_[k];
                if (end + static_cast<long>(tail_[j] - 1) * dur_min_ >= best_) continue;
                cands.push_back(Cand{j, k, start, end});
            }
        }
        std::sort(cands.begin(), cands.end(), [&](const Cand& a, const Cand& b) {
            if (a.end != b.end) return a.end < b.end;
            if (tail_[a.task] != tail_[b.task]) return tail_[a.task] > tail_[b.task];
            if (a.task != b.task) return a.task < b.task;
            return a.machine < b.machine;
        });
        for (const auto& c : cands) {
            // Re-check against a possibly improved incumbent.
            if (c.end + static_cast<long>(tail_[c.task] - 1) * dur_min_ >= best_) continue;
            long saved_ready = ready_[c.machine];
            ready_[c.machine] = c.end;
            finish_[c.task] = c.end;
            plan_machine_[c.task] = c.machine;
            plan_start_[c.task] = c.start;
            dfs(mask | (1u << c.task), std::max(current_max, c.end), depth + 1);
            ready_[c.machine] = saved_ready;
        }
    }

    // Transposition on (mask, canonical machine state, frontier finishes).
    bool visit_once(std::uint32_t mask) {
        if (visited_.size() > kMaxVisited) return true;
        std::vector<long> key;
        key.reserve(2 + m_ + n_);
        key.push_back(static_cast<long>(mask));
        key.push_back(best_);  // incumbent-sensitive: re-allow after improvements
        std::vector<std::pair<long, long>> ms;
        for (int k = 0; k < m_; ++k) ms.emplace_back(dur_[k], ready_[k]);
        std::sort(ms.begin(), ms.end());
        for (auto& [d, r] : ms) {
            key.push_back(d);
            key.push_back(r);
        }
        for (int j = 0; j < n_; ++j) {
            if (!(mask & (1u << j))) continue;
            bool frontier = false;
            for (int v : graph_.successors(j))
                if (!(mask & (1u << v))) frontier = true;
            if (frontier) {
                key.push_back(j);
                key.push_back(finish_[j]);
            }
        }
        return visited_.insert(std::move(key)).second;
    }

    static constexpr size_t kMaxVisited = 1u << 22;

    const TaskGraph& graph_;
    const MachineConfig& machines_;
    const ChainSet* chains_ = nullptr;
    int n_ = 0, m_ = 0;
    long scale_ = 1, dur_min_ = 1, best_ = 0;
    std::vector<long> dur_, ready_, finish_, plan_start_, best_plan_start_;
    std::vector<int> plan_machine_, best_plan_machine_;
    std::vector<std::uint32_t> pred_mask_;
    std::vector<int> tail_;
    std::vector<long> cap_num_, cap_den_;
    std::unordered_set<std::vector<long>, VecHash> visited_;
};

}  // namespace

Rational exact_optimal_makespan(const Instance& instance, const OracleLimits& limits) {
    MakespanSearch search(instance, limits);
    return search.run(instance.graph, instance.machines).first;
}

std::pair<Rational, Schedule> exact_optimal_schedule(const Instance& instance,
                                                     const OracleLimits& limits) {
    MakespanSearch search(instance, limits);
    return search.run(instance.graph, instance.machines);
}

namespace {

long to_long_checked(const mpz_class& z, const char* what) {
    if (!z.fits_slong_p()) throw SizeLimitExceeded(std::string("energy oracle: ") + what +
                                                   " exceeds the machine-word guard");
    return z.get_si();
}

}  // namespace

Rational exhaustive_min_energy(const Instance& instance, const EnergyParams& params,
                               const Rational& makespan_cap, const mpz_class& extra_denominator,
                               const std::optional<Rational>& achievable_hint) {
    const TaskGraph& g = *instance.graph;
    const MachineConfig& mc = *instance.machines;
    int n = g.task_count();
    int m = mc.machine_count();
    if (n > 4 || m > 3)
        throw SizeLimitExceeded("energy oracle guard: n <= 4, m <= 3");
    if (!params.alpha.is_integer())
        throw NonRepresentablePower("energy oracle requires integer alpha");
    long alpha = params.alpha.num_long();
    if (makespan_cap.sign() <= 0) {
        if (n == 0) return Rational(0);
        throw InvalidSpec("makespan cap must be positive");
    }
    if (n == 0) return Rational(0);

    // Grid step 1/G with G = s * L: s = lcm of speed numerators, L = lcm of
    // the denominators present (speeds, cap, caller extras).
    mpz_class s_part(1), l_part(1);
    for (const auto& c : mc.speeds()) {
        mpz_lcm(s_part.get_mpz_t(), s_part.get_mpz_t(), c.num().get_mpz_t());
        mpz_lcm(l_part.get_mpz_t(), l_part.get_mpz_t(), c.den().get_mpz_t());
    }
    mpz_lcm(l_part.get_mpz_t(), l_part.get_mpz_t(), makespan_cap.den().get_mpz_t());
    mpz_lcm(l_part.get_mpz_t(), l_part.get_mpz_t(), extra_denominator.get_mpz_t());
    mpz_class grid_den = s_part * l_part;  // G

    // Ticks available under the cap (cap is a grid multiple by construction).
    mpz_class ticks_z = makespan_cap.num() * (grid_den / makespan_cap.den());
    long ticks = to_long_checked(ticks_z, "tick count");
    if (ticks > 4096) throw SizeLimitExceeded("energy oracle: grid too fine");

    // Work per interval on machine k: c_k / G = winc_k / wfull.
    mpz_class wfull(1);
    for (const auto& c : mc.speeds()) {
        mpz_class den = c.den() * grid_den;
        mpz_lcm(wfull.get_mpz_t(), wfull.get_mpz_t(), den.get_mpz_t());
    }
    long full = to_long_checked(wfull, "work unit count");
    if (full > 4096) throw SizeLimitExceeded("energy oracle: work grid too fine");
    std::vector<long> winc(m);
    for (int k = 0; k < m; ++k)
        winc[k] = to_long_checked(mc.speed(k).num() * (wfull / (mc.speed(k).den() * grid_den)),
                                  "work increment");

    // Energy per interval on machine k: c_k^alpha / G, integer over a common
    // denominator E0.
    mpz_class e_den(1);
    std::vector<mpz_class> e_num_raw(m);
    for (int k = 0; k < m; ++k) {
        Rational e = mc.speed(k).pow_int(alpha) / Rational(grid_den, mpz_class(1));
        e_num_raw[k] = e.num();
        mpz_lcm(e_den.get_mpz_t(), e_den.get_mpz_t(), e.den().get_mpz_t());
    }
    std::vector<long> cost(m);
    for (int k = 0; k < m; ++k) {
        Rational e = mc.speed(k).pow_int(alpha) / Rational(grid_den, mpz_class(1));
        cost[k] = to_long_checked(e.num() * (e_den / e.den()), "energy increment");
    }

    // Forward DP over intervals; state = work units per task, value = min
    // energy in units of 1/E0.
    std::vector<std::uint32_t> pred_mask(n, 0);
    for (auto [u, v] : g.edges()) pred_mask[v] |= 1u << u;

    auto encode = [&](const std::vector<long>& w) {
        std::uint64_t key = 0;
        for (int j = 0; j < n; ++j) key = key * static_cast<std::uint64_t>(full + 1) + w[j];
        return key;
    };

    constexpr long kInf = std::numeric_limits<long>::max();
    std::unordered_map<std::uint64_t, long> layer;
    layer[encode(std::vector<long>(n, 0))] = 0;
    long best_done = kInf;
    if (achievable_hint) {
        // The hint is the energy of a known grid schedule, so it is an
        // achievable incumbent: pruning against it never changes the minimum.
        Rational scaled = *achievable_hint * Rational(e_den, mpz_class(1));
        if (scaled.is_integer() && scaled.num().fits_slong_p()) best_done = scaled.num().get_si();
    }

    // Admissible completion bound: every remaining work unit costs at least
    // the cheapest energy-per-work ratio among the machines.
    int cheapest = 0;
    for (int k = 1; k < m; ++k)
        if (cost[k] * winc[cheapest] < cost[cheapest] * winc[k]) cheapest = k;
    auto remaining_cost_floor = [&](const std::vector<long>& works) {
        long remaining = 0;
        for (int j = 0; j < n; ++j) remaining += full - works[j];
        // floor(remaining * cost / winc) never overestimates.
        return (remaining * cost[cheapest]) / winc[cheapest];
    };

    auto complete_mask = [&](const std::vector<long>& w) {
        std::uint32_t mask = 0;
        for (int j = 0; j < n; ++j)
            if (w[j] == full) mask |= 1u << j;
        return mask;
    };

    std::vector<long> w(n);
    constexpr size_t kLayerBudget = 1u << 19;
    constexpr long kWorkBudget = 1L << 22;  // states expanded across all layers
    long expanded = 0;
    for (long tick = 0; tick < ticks && !layer.empty(); ++tick) {
        if (layer.size() > kLayerBudget || (expanded += layer.size()) > kWorkBudget)
            throw SizeLimitExceeded("energy oracle: state space exceeds the search budget");
        std::unordered_map<std::uint64_t, long> next;
        for (const auto& [key, e] : layer) {
            if (e >= best_done) continue;
            std::uint64_t k = key;
            for (int j = n - 1; j >= 0; --j) {
                w[j] = static_cast<long>(k % static_cast<std::uint64_t>(full + 1));
                k /= static_cast<std::uint64_t>(full + 1);
            }
            if (e + remaining_cost_floor(w) >= best_done) continue;
            std::uint32_t done = complete_mask(w);
            if (done == (1u << n) - 1) {
                best_done = std::min(best_done, e);
                continue;
            }
            // Runnable: incomplete, all predecessors complete, and the
            // machine's increment must not overshoot unit work.
            std::vector<int> runnable;
            for (int j = 0; j < n; ++j)
                if (w[j] < full && (pred_mask[j] & done) == pred_mask[j]) runnable.push_back(j);

            // Enumerate injective assignments runnable -> machines (or idle).
            std::vector<std::pair<std::vector<long>, long>> outs;
            std::vector<long> cur = w;
            std::uint32_t used = 0;
            std::function<void(size_t, long)> rec = [&](size_t idx, long added) {
                if (idx == runnable.size()) {
                    outs.emplace_back(cur, added);
                    return;
                }
                int j = runnable[idx];
                rec(idx + 1, added);  // idle
                for (int mk = 0; mk < m; ++mk) {
                    if (used & (1u << mk)) continue;
                    if (cur[j] + winc[mk] > full) continue;
                    used |= 1u << mk;
                    cur[j] += winc[mk];
                    rec(idx + 1, added + cost[mk]);
                    cur[j] -= winc[mk];
                    used &= ~(1u << mk);
                }
            };
            rec(0, 0);
            for (auto& [nw, added] : outs) {
                long ne = e + added;
                if (ne >= best_done) continue;
                auto nk = encode(nw);
                auto it = next.find(nk);
                if (it == next.end() || ne < it->second) next[nk] = ne;
            }
        }
        layer = std::move(next);
    }
    for (const auto& [key, e] : layer) {
        std::uint64_t k = key;
        bool all = true;
        for (int j = n - 1; j >= 0; --j) {
            long wj = static_cast<long>(k % static_cast<std::uint64_t>(full + 1));
            k /= static_cast<std::uint64_t>(full + 1);
            all = all && wj == full;
        }
        if (all) best_done = std::min(best_done, e);
    }
    if (best_done == kInf)
        throw InvalidSpec("energy oracle: no grid schedule completes within the cap");
    return Rational(mpz_class(best_done), e_den);
}

namespace {

// All orders in which completion events can happen: ordered partitions of the
// task set, where a task may only appear once all its predecessors appeared
// in strictly earlier groups.
void completion_orders(const TaskGraph& g, std::vector<int>& placed_group,
                       std::vector<std::vector<int>>& groups,
                       const std::function<void(const std::vector<std::vector<int>>&)>& emit) {
    int n = g.task_count();
    std::vector<int> available;
    for (int j = 0; j < n; ++j) {
        if (placed_group[j] >= 0) continue;
        bool ok = true;
        for (int p : g.predecessors(j)) ok = ok && placed_group[p] >= 0;
        if (ok) available.push_back(j);
    }
    bool done = true;
    for (int j = 0; j < n; ++j) done = done && placed_group[j] >= 0;
    if (done) {
        emit(groups);
        return;
    }
    // Nonempty subsets of the available set form the next completion group.
    int a = static_cast<int>(available.size());
    for (int mask = 1; mask < (1 << a); ++mask) {
        std::vector<int> group;
        for (int b = 0; b < a; ++b)
            if (mask & (1 << b)) group.push_back(available[b]);
        int gi = static_cast<int>(groups.size());
        for (int j : group) placed_group[j] = gi;
        groups.push_back(group);
        completion_orders(g, placed_group, groups, emit);
        groups.pop_back();
        for (int j : group) placed_group[j] = -1;
    }
}

}  // namespace

Rational min_energy_preemptive(const Instance& instance, const EnergyParams& params,
                               const Rational& makespan_cap) {
    const TaskGraph& g = *instance.graph;
    const MachineConfig& mc = *instance.machines;
    int n = g.task_count();
    int m = mc.machine_count();
    if (n > 4 || m > 3) throw SizeLimitExceeded("energy oracle guard: n <= 4, m <= 3");
    if (n == 0) return Rational(0);
    if (makespan_cap.sign() <= 0) throw InvalidSpec("makespan cap must be positive");
    if (!params.alpha.is_integer())
        throw NonRepresentablePower("energy oracle requires integer alpha");
    long alpha = params.alpha.num_long();

    std::vector<Rational> power(m);
    for (int k = 0; k < m; ++k) power[k] = mc.speed(k).pow_int(alpha);

    std::optional<Rational> best;
    auto solve_order = [&](const std::vector<std::vector<int>>& groups) {
        int p = static_cast<int>(groups.size());
        std::vector<int> event_of(n, -1);
        for (int i = 0; i < p; ++i)
            for (int j : groups[i]) event_of[j] = i;

        LinearProgram lp;
        std::vector<int> delta(p);
        for (int i = 0; i < p; ++i) delta[i] = lp.add_var("d" + std::to_string(i));
        // t[j][k][i], only for intervals where j may run.
        std::vector<std::vector<std::vector<int>>> tv(
            n, std::vector<std::vector<int>>(m, std::vector<int>(p, -1)));
        auto may_run = [&](int j, int i) {
            if (i > event_of[j]) return false;
            for (int pr : g.predecessors(j))
                if (event_of[pr] >= i) return false;
            return true;
        };
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < m; ++k)
                for (int i = 0; i < p; ++i)
                    if (may_run(j, i)) {
                        tv[j][k][i] = lp.add_var("t");
                        lp.objective[tv[j][k][i]] = power[k];
                    }

        LinRow capn;
        for (int i = 0; i < p; ++i) capn.coeffs[delta[i]] = Rational(1);
        capn.rel = Rel::Le;
        capn.rhs = makespan_cap;
        lp.rows.push_back(std::move(capn));

        for (int i = 0; i < p; ++i) {
            for (int k = 0; k < m; ++k) {
                LinRow row;
                bool any = false;
                for (int j = 0; j < n; ++j)
                    if (tv[j][k][i] >= 0) {
                        row.coeffs[tv[j][k][i]] = Rational(1);
                        any = true;
                    }
                if (!any) continue;
                row.coeffs[delta[i]] = Rational(-1);
                row.rel = Rel::Le;
                row.rhs = Rational(0);
                lp.rows.push_back(std::move(row));
            }
            for (int j = 0; j < n; ++j) {
                LinRow row;
                bool any = false;
                for (int k = 0; k < m; ++k)
                    if (tv[j][k][i] >= 0) {
                        row.coeffs[tv[j][k][i]] = Rational(1);
                        any = true;
                    }
                if (!any) continue;
                row.coeffs[delta[i]] = Rational(-1);
                row.rel = Rel::Le;
                row.rhs = Rational(0);
                lp.rows.push_back(std::move(row));
            }
        }
        for (int j = 0; j < n; ++j) {
            LinRow row;
            for (int k = 0; k < m; ++k)
                for (int i = 0; i < p; ++i)
                    if (tv[j][k][i] >= 0) row.coeffs[tv[j][k][i]] = mc.speed(k);
            row.rel = Rel::Eq;
            row.rhs = Rational(1);
            lp.rows.push_back(std::move(row));
        }
        auto res = solve_simplex(lp);
        if (res.status != LpStatus::Optimal) return;  // infeasible order
        if (!best || res.objective < *best) best = res.objective;
    };

    std::vector<int> placed(n, -1);
    std::vector<std::vector<int>> groups;
    completion_orders(g, placed, groups, solve_order);
    if (!best) throw InvalidSpec("energy oracle: no completion order is feasible within the cap");
    return *best;
}

Schedule asymmetrize(const Schedule& sym_schedule, const SymmetricConfig& sym,
                     std::shared_ptr<const MachineConfig> target) {
    if (target->machine_count() != sym.m)
        throw MachineCountMismatch("target machine count differs from the symmetric system");
    Rational avg = target->total_capability() / Rational(sym.m);
    if (avg != sym.speed)
        throw AverageSpeedMismatch("target speeds average " + avg.str() + ", expected " +
                                   sym.speed.str());

    Timeline tl = build_timeline(sym_schedule);
    Schedule out;
    out.graph = sym_schedule.graph;
    out.machines = target;

    Rational cursor(0);
    for (size_t i = 0; i + 1 < tl.breakpoints.size(); ++i) {
        Rational delta = tl.breakpoints[i + 1] - tl.breakpoints[i];
        std::vector<int> active;  // tasks running in this interval, by source machine order
        for (int k = 0; k < sym.m; ++k)
            if (tl.occupancy[i][k] >= 0) active.push_back(tl.occupancy[i][k]);
        int lambda = static_cast<int>(active.size());
        if (lambda == 0) continue;  // idle interval compacts away entirely

        Rational cap_sum(0);
        for (int k = 0; k < lambda; ++k) cap_sum += target->speed(k);
        // New interval length: work lambda*s'*delta at rate cap_sum.
        Rational shrunk = delta * Rational(lambda) * sym.speed / cap_sum;
        Rational slice = shrunk / Rational(lambda);
        for (int sl = 0; sl < lambda; ++sl) {
            Rational s0 = cursor + slice * Rational(sl);
            Rational s1 = cursor + slice * Rational(sl + 1);
            for (int j = 0; j < lambda; ++j) {
                int machine = (j + sl) % lambda;
                out.segments.push_back(Segment{active[j], machine, s0, s1});
            }
        }
        cursor += shrunk;
    }
    return out;
}

DominanceReport check_asym_dominance(const Instance& instance, const SymmetricConfig& sym,
                                     std::shared_ptr<const MachineConfig> target,
                                     const OracleLimits& limits) {
    std::vector<Rational> uniform(sym.m, sym.speed);
    Instance sym_instance = instance;
    sym_instance.machines = std::make_shared<MachineConfig>(uniform);
    auto [opt, sched] = exact_optimal_schedule(sym_instance, limits);

    Rational busy(0);
    for (const auto& seg : sched.segments) busy += seg.end - seg.start;
    bool had_idle = busy < Rational(sym.m) * opt;

    Schedule transformed = asymmetrize(sched, sym, target);
    Rational t = makespan(transformed);
    DominanceReport report;
    report.symmetric_optimum = opt;
    report.transformed_makespan = t;
    report.ok = t <= opt;
    report.strict = t < opt;
    report.sym_had_idle = had_idle;
    return report;
}

}  // namespace asymsched
