#include "asymsched/schedule.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "asymsched/errors.hpp"

namespace asymsched {

std::string Violation::describe() const {
    std::ostringstream os;
    switch (kind) {
        case ViolationKind::MachineOverlap:
            os << "machine " << a << " runs two segments that overlap in time";
            break;
        case ViolationKind::TaskSelfOverlap:
            os << "task " << a << " is processed by two machines simultaneously";
            break;
        case ViolationKind::WorkMismatch:
            os << "task " << a << " accumulates work " << detail.str() << " instead of 1";
            break;
        case ViolationKind::PrecedenceViolation:
            os << "edge (" << a << "," << b << ") violated: successor starts before predecessor ends";
            break;
    }
    return os.str();
}

namespace {

void check_well_formed(const Schedule& s) {
    int n = s.graph->task_count();
    int m = s.machines->machine_count();
    for (const auto& seg : s.segments) {
        if (seg.task < 0 || seg.task >= n)
            throw InvalidTaskId("segment references task " + std::to_string(seg.task));
        if (seg.machine < 0 || seg.machine >= m)
            throw InvalidSpec("segment references machine " + std::to_string(seg.machine));
        if (!(seg.end > seg.start))
            throw InvalidSpec("segment must have end > start");
        if (seg.start.sign() < 0)
            throw InvalidSpec("segment starts before time 0");
    }
}

}  // namespace

std::optional<Violation> validate(const Schedule& s) {
    check_well_formed(s);
    int n = s.graph->task_count();
    int m = s.machines->machine_count();

    // Machine overlap: per machine, sort by start and compare neighbours.
    std::vector<std::vector<const Segment*>> per_machine(m);
    for (const auto& seg : s.segments) per_machine[seg.machine].push_back(&seg);
    for (int k = 0; k < m; ++k) {
        auto& v = per_machine[k];
        std::sort(v.begin(), v.end(), [](const Segment* a, const Segment* b) {
            return a->start < b->start;
        });
        for (size_t i = 1; i < v.size(); ++i)
            if (v[i]->start < v[i - 1]->end)
                return Violation{ViolationKind::MachineOverlap, k, v[i]->task, {}};
    }

    // Task self-overlap.
    std::vector<std::vector<const Segment*>> per_task(n);
    for (const auto& seg : s.segments) per_task[seg.task].push_back(&seg);
    for (int t = 0; t < n; ++t) {
        auto& v = per_task[t];
        std::sort(v.begin(), v.end(), [](const Segment* a, const Segment* b) {
            return a->start < b->start;
        });
        for (size_t i = 1; i < v.size(); ++i)
            if (v[i]->start < v[i - 1]->end)
                return Violation{ViolationKind::TaskSelfOverlap, t, -1, {}};
    }

    // Unit work per task.
    for (int t = 0; t < n; ++t) {
        Rational work(0);
        for (const Segment* seg : per_task[t])
            work += (seg->end - seg->start) * s.machines->speed(seg->machine);
        if (work != Rational(1))
            return Violation{ViolationKind::WorkMismatch, t, -1, work};
    }

    // Precedence: max end of predecessor <= min start of successor.
    for (auto [u, v] : s.graph->edges()) {
        Rational u_end(0), v_start(0);
        for (const Segment* seg : per_task[u]) u_end = max(u_end, seg->end);
        bool first = true;
        for (const Segment* seg : per_task[v]) {
            if (first || seg->start < v_start) v_start = seg->start;
            first = false;
        }
        if (v_start < u_end)
            return Violation{ViolationKind::PrecedenceViolation, u, v, {}};
    }
    return std::nullopt;
}

Rational makespan(const Schedule& s) {
    Rational out(0);
    for (const auto& seg : s.segments) out = max(out, seg.end);
    return out;
}

namespace {

Rational speed_power_exact(const Rational& speed, const Rational& alpha) {
    if (alpha.is_integer()) return speed.pow_int(alpha.num_long());
    if (auto p = exact_pow(speed, alpha)) return *p;
    throw NonRepresentablePower("speed " + speed.str() + " has no exact rational power " +
                                alpha.str() + "; use the approximate mode");
}

}  // namespace

Rational energy(const Schedule& s, const Rational& alpha) {
    if (alpha.sign() <= 0) throw InvalidSpec("alpha must be positive");
    std::map<int, Rational> power;  // machine -> speed^alpha, memoized
    Rational total(0);
    for (const auto& seg : s.segments) {
        auto it = power.find(seg.machine);
        if (it == power.end())
            it = power.emplace(seg.machine,
                               speed_power_exact(s.machines->speed(seg.machine), alpha)).first;
        total += it->second * (seg.end - seg.start);
    }
    return total;
}

Rational energy(const Schedule& s, const EnergyParams& params) { return energy(s, params.alpha); }

Rational energy_approx(const Schedule& s, const Rational& alpha) {
    if (alpha.sign() <= 0) throw InvalidSpec("alpha must be positive");
    std::map<int, Rational> power;
    Rational total(0);
    for (const auto& seg : s.segments) {
        auto it = power.find(seg.machine);
        if (it == power.end())
            it = power.emplace(seg.machine, fixed_pow(s.machines->speed(seg.machine), alpha)).first;
        total += it->second * (seg.end - seg.start);
    }
    return total;
}

Timeline build_timeline(const Schedule& s) {
    std::set<Rational> points;
    points.insert(Rational(0));
    for (const auto& seg : s.segments) {
        points.insert(seg.start);
        points.insert(seg.end);
    }
    Timeline tl;
    tl.breakpoints.assign(points.begin(), points.end());
    int m = s.machines->machine_count();
    size_t intervals = tl.breakpoints.size() > 1 ? tl.breakpoints.size() - 1 : 0;
    tl.occupancy.assign(intervals, std::vector<int>(m, -1));
    for (const auto& seg : s.segments) {
        auto lo = std::lower_bound(tl.breakpoints.begin(), tl.breakpoints.end(), seg.start);
        auto hi = std::lower_bound(tl.breakpoints.begin(), tl.breakpoints.end(), seg.end);
        for (auto it = lo; it != hi; ++it)
            tl.occupancy[it - tl.breakpoints.begin()][seg.machine] = seg.task;
    }
    return tl;
}

std::vector<Block> supported_set_blocks(const Schedule& s) {
    int n = s.graph->task_count();
    std::vector<Rational> completion(n, Rational(0));
    std::vector<bool> has_segment(n, false);
    for (const auto& seg : s.segments) {
        completion[seg.task] = max(completion[seg.task], seg.end);
        has_segment[seg.task] = true;
    }
    Rational horizon = makespan(s);
    if (s.segments.empty()) return {};

    // Completions in time order; a boundary appears where some task becomes
    // enabled (its last predecessor completes).
    std::map<Rational, std::vector<int>> by_time;
    for (int t = 0; t < n; ++t)
        if (has_segment[t]) by_time[completion[t]].push_back(t);

    std::vector<int> missing_preds(n, 0);
    for (int t = 0; t < n; ++t) missing_preds[t] = static_cast<int>(s.graph->predecessors(t).size());

    std::set<Rational> boundaries;
    boundaries.insert(Rational(0));
    boundaries.insert(horizon);
    for (const auto& [time, tasks] : by_time) {
        bool enables = false;
        for (int t : tasks)
            for (int succ : s.graph->successors(t))
                if (--missing_preds[succ] == 0) enables = true;
        if (enables) boundaries.insert(time);
    }

    std::vector<Block> blocks;
    auto it = boundaries.begin();
    Rational prev = *it;
    for (++it; it != boundaries.end(); ++it) {
        blocks.push_back(Block{prev, *it});
        prev = *it;
    }
    return blocks;
}

std::string render_gantt(const Schedule& s) {
    std::ostringstream os;
    int m = s.machines->machine_count();
    std::vector<std::vector<Segment>> per_machine(m);
    for (const auto& seg : s.segments) per_machine[seg.machine].push_back(seg);
    for (int k = 0; k < m; ++k) {
        std::sort(per_machine[k].begin(), per_machine[k].end(),
                  [](const Segment& a, const Segment& b) { return a.start < b.start; });
        os << "m" << k << " (speed " << s.machines->speed(k).str() << "):";
        for (const auto& seg : per_machine[k])
            os << "  t" << seg.task << "[" << seg.start.str() << "," << seg.end.str() << ")";
        os << "\n";
    }
    return os.str();
}

}  // namespace asymsched
