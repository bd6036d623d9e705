#include "asymsched/save_energy.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "asymsched/errors.hpp"

namespace asymsched {

Rational optimal_target_speed(const Rational& c_u, const EnergyParams& params) {
    const Rational& alpha = params.alpha;
    Rational inv_alpha = Rational(1) / alpha;
    Rational exponent = Rational(1) / (alpha - Rational(1));
    if (auto exact = exact_pow(inv_alpha, exponent)) return *exact * c_u;
    return fixed_pow(inv_alpha, exponent) * c_u;
}

int compare_target_distance(const Rational& c_u, const Rational& a, const Rational& b,
                            const EnergyParams& params) {
    if (a == b) return 0;
    // |a-t|^2 - |b-t|^2 = (a-b)(a+b-2t); the sign of (a+b-2t) follows from
    // comparing ((a+b)/(2 c_u))^(alpha-1) with 1/alpha, exact for integer
    // alpha.
    int sign_diff = a < b ? -1 : 1;
    int sign_mid;
    if (params.alpha.is_integer()) {
        Rational ratio = (a + b) / (Rational(2) * c_u);
        Rational lhs = ratio.pow_int(params.alpha.num_long() - 1);
        Rational rhs = Rational(1) / params.alpha;
        sign_mid = lhs == rhs ? 0 : (lhs < rhs ? -1 : 1);
    } else {
        Rational t = optimal_target_speed(c_u, params);
        Rational mid = a + b - Rational(2) * t;
        sign_mid = mid.sign();
    }
    return sign_diff * sign_mid;
}

namespace {

struct TaskContext {
    Rational prev_end;                    // latest own piece ending at/before the fragment
    std::optional<Rational> next_start;   // earliest own piece starting at/after it
};

// Busy intervals of one machine, merged and sorted.
std::vector<std::pair<Rational, Rational>> busy_intervals(const Schedule& s, int machine,
                                                          int skip_segment) {
    std::vector<std::pair<Rational, Rational>> busy;
    for (int i = 0; i < static_cast<int>(s.segments.size()); ++i) {
        if (i == skip_segment) continue;
        const auto& seg = s.segments[i];
        if (seg.machine != machine) continue;
        busy.emplace_back(seg.start, seg.end);
    }
    std::sort(busy.begin(), busy.end());
    return busy;
}

// Maximal idle intervals of `machine` within [lo, hi].
std::vector<std::pair<Rational, Rational>> idle_intervals(const Schedule& s, int machine,
                                                          const Rational& lo,
                                                          const Rational& hi) {
    auto busy = busy_intervals(s, machine, -1);
    std::vector<std::pair<Rational, Rational>> out;
    Rational cursor = lo;
    for (const auto& [b0, b1] : busy) {
        if (b1 <= cursor) continue;
        if (b0 >= hi) break;
        if (b0 > cursor) out.emplace_back(cursor, min(b0, hi));
        cursor = max(cursor, b1);
        if (cursor >= hi) break;
    }
    if (cursor < hi) out.emplace_back(cursor, hi);
    return out;
}

// Earliest start >= from on `machine` such that [start, start+len] is idle,
// ignoring segment `skip_segment` (the parent being reshaped).
std::optional<Rational> earliest_gap(const Schedule& s, int machine, int skip_segment,
                                     const Rational& from, const Rational& len,
                                     const Rational& deadline) {
    auto busy = busy_intervals(s, machine, skip_segment);
    Rational cursor = from;
    for (const auto& [b0, b1] : busy) {
        if (b1 <= cursor) continue;
        if (cursor + len <= b0) break;
        cursor = max(cursor, b1);
    }
    if (cursor + len > deadline) return std::nullopt;
    return cursor;
}

Rational power_for_delta(const Rational& speed, const Rational& alpha) {
    if (alpha.is_integer()) return speed.pow_int(alpha.num_long());
    if (auto p = exact_pow(speed, alpha)) return *p;
    return fixed_pow(speed, alpha);
}

}  // namespace

Schedule apply_move(const Schedule& s, const MoveCandidate& mv) {
    Schedule out;
    out.graph = s.graph;
    out.machines = s.machines;
    out.segments.reserve(s.segments.size() + 3);
    const Segment& parent = s.segments[mv.parent_segment];
    for (int i = 0; i < static_cast<int>(s.segments.size()); ++i)
        if (i != mv.parent_segment) out.segments.push_back(s.segments[i]);

    if (parent.start < mv.source_start)
        out.segments.push_back(Segment{mv.task, mv.source_machine, parent.start, mv.source_start});
    if (mv.source_end < parent.end)
        out.segments.push_back(Segment{mv.task, mv.source_machine, mv.source_end, parent.end});
    out.segments.push_back(Segment{mv.task, mv.target.machine, mv.placed_start, mv.placed_end});
    if (mv.remainder_start && *mv.remainder_end > *mv.remainder_start)
        out.segments.push_back(
            Segment{mv.task, mv.source_machine, *mv.remainder_start, *mv.remainder_end});

    // Normalize: sort and merge abutting pieces of the same task on the same
    // machine (metrics are invariant under segment splitting).
    std::sort(out.segments.begin(), out.segments.end(), [](const Segment& a, const Segment& b) {
        if (a.task != b.task) return a.task < b.task;
        if (a.machine != b.machine) return a.machine < b.machine;
        return a.start < b.start;
    });
    std::vector<Segment> merged;
    for (const auto& seg : out.segments) {
        if (!merged.empty() && merged.back().task == seg.task &&
            merged.back().machine == seg.machine && merged.back().end == seg.start) {
            merged.back().end = seg.end;
        } else {
            merged.push_back(seg);
        }
    }
    out.segments = std::move(merged);
    return out;
}

namespace {

// Builds the candidate for one (fragment, hole) pair, if any; geometry first,
// then a full trial application gate (validity + makespan). The target window
// for the task's work is bounded by its predecessors' completions and its
// successors' earliest start: the span within which rescheduling it cannot
// disturb precedence.
std::optional<MoveCandidate> make_candidate(const Schedule& s, const EnergyParams& params,
                                            int parent_idx, const Rational& a, const Rational& b,
                                            const Hole& hole, const Rational& horizon) {
    const Segment& parent = s.segments[parent_idx];
    const Rational& c_u = s.machines->speed(parent.machine);
    const Rational& c_v = hole.speed;
    if (!(c_v < c_u)) return std::nullopt;

    Rational lo(0);
    for (int p : s.graph->predecessors(parent.task))
        for (const auto& seg : s.segments)
            if (seg.task == p) lo = max(lo, seg.end);
    Rational hi = horizon;
    for (int succ : s.graph->successors(parent.task))
        for (const auto& seg : s.segments)
            if (seg.task == succ) hi = min(hi, seg.start);

    // Own-piece neighbourhood of the fragment.
    Rational prev_end = lo;
    std::optional<Rational> next_start;
    if (parent.start < a) {
        prev_end = a;
    } else {
        for (const auto& seg : s.segments)
            if (seg.task == parent.task && seg.end <= a) prev_end = max(prev_end, seg.end);
    }
    if (parent.end > b) {
        next_start = b;
    } else {
        for (const auto& seg : s.segments) {
            if (seg.task != parent.task || seg.start < b) continue;
            if (&seg == &parent) continue;
            if (!next_start || seg.start < *next_start) next_start = seg.start;
        }
    }

    Rational w1 = max(hole.start, prev_end);
    Rational w2 = next_start ? min(hole.end, *next_start) : hole.end;
    w2 = min(w2, hi);
    if (!(w1 < w2)) return std::nullopt;

    Rational work = (b - a) * c_u;
    Rational capacity = (w2 - w1) * c_v;

    MoveCandidate mv;
    mv.parent_segment = parent_idx;
    mv.task = parent.task;
    mv.source_machine = parent.machine;
    mv.source_start = a;
    mv.source_end = b;
    mv.target = hole;

    if (work <= capacity) {
        Rational dur = work / c_v;
        mv.kind = dur == (w2 - w1) ? FitKind::Exact : FitKind::Slack;
        mv.placed_start = w1;
        mv.placed_end = w1 + dur;
        mv.moved_work = work;
    } else {
        // Partial fill: prefer the tail variant (remainder stays put).
        Rational moved;
        std::optional<Rational> placed_start;
        Rational rem_end_if_full = a + (work - capacity) / c_u;
        if (rem_end_if_full <= w1) {
            moved = capacity;
            placed_start = w1;
        } else if (w2 > b) {
            // Placed piece ends at w2 and starts exactly when the remainder
            // ends: moved = (w2 - b) * c_u c_v / (c_u - c_v).
            moved = (w2 - b) * c_u * c_v / (c_u - c_v);
            if (moved.sign() > 0 && moved < work) placed_start = w2 - moved / c_v;
        }
        if (placed_start && moved.sign() > 0 && moved < work) {
            mv.kind = FitKind::PartialTail;
            mv.moved_work = moved;
            mv.placed_start = *placed_start;
            mv.placed_end = *placed_start + moved / c_v;
            mv.remainder_start = a;
            mv.remainder_end = a + (work - moved) / c_u;
        } else {
            // Head variant: fill [w1, w2] with the fragment's first work and
            // re-anchor the rest after the placed piece.
            Rational moved_h = capacity;
            Rational rd = (work - moved_h) / c_u;
            Rational deadline = next_start ? min(*next_start, hi) : hi;
            auto r1 = earliest_gap(s, parent.machine, parent_idx, w2, rd, deadline);
            if (!r1) return std::nullopt;
            mv.kind = FitKind::PartialHead;
            mv.moved_work = moved_h;
            mv.placed_start = w1;
            mv.placed_end = w2;
            mv.remainder_start = *r1;
            mv.remainder_end = *r1 + rd;
        }
    }

    Rational freed = mv.moved_work / c_u;
    Rational placed_dur = mv.placed_end - mv.placed_start;
    mv.energy_delta = power_for_delta(c_v, params.alpha) * placed_dur -
                      power_for_delta(c_u, params.alpha) * freed;

    // Gate: the applied move must keep the schedule valid and the makespan
    // un-increased.
    Schedule trial = apply_move(s, mv);
    if (validate(trial)) return std::nullopt;
    if (makespan(trial) > horizon) return std::nullopt;
    return mv;
}

}  // namespace

std::vector<MoveCandidate> enumerate_moves(const Schedule& s, const EnergyParams& params,
                                           const Block& block) {
    std::vector<MoveCandidate> out;
    Rational horizon = makespan(s);
    int m = s.machines->machine_count();

    // Fragments: segment portions inside the block, in time order.
    struct Frag {
        int parent;
        Rational a, b;
    };
    std::vector<Frag> frags;
    for (int i = 0; i < static_cast<int>(s.segments.size()); ++i) {
        const auto& seg = s.segments[i];
        Rational a = max(seg.start, block.start);
        Rational b = min(seg.end, block.end);
        if (a < b) frags.push_back(Frag{i, a, b});
    }
    std::sort(frags.begin(), frags.end(), [&](const Frag& x, const Frag& y) {
        if (x.a != y.a) return x.a < y.a;
        return s.segments[x.parent].machine < s.segments[y.parent].machine;
    });

    // Holes span the whole horizon; each candidate clips them to the moving
    // task's precedence window.
    std::vector<Hole> holes;
    for (int k = 0; k < m; ++k)
        for (const auto& [h0, h1] : idle_intervals(s, k, Rational(0), horizon))
            holes.push_back(Hole{k, h0, h1, s.machines->speed(k)});

    for (const auto& frag : frags) {
        const Rational& c_u = s.machines->speed(s.segments[frag.parent].machine);
        std::vector<MoveCandidate> mine;
        for (const auto& hole : holes) {
            if (auto mv = make_candidate(s, params, frag.parent, frag.a, frag.b, hole, horizon))
                mine.push_back(std::move(*mv));
        }
        std::sort(mine.begin(), mine.end(), [&](const MoveCandidate& x, const MoveCandidate& y) {
            int d = compare_target_distance(c_u, x.target.speed, y.target.speed, params);
            if (d != 0) return d < 0;
            if (x.target.speed != y.target.speed) return x.target.speed < y.target.speed;
            if (x.target.start != y.target.start) return x.target.start < y.target.start;
            if (x.moved_work != y.moved_work) return x.moved_work > y.moved_work;
            return x.target.machine < y.target.machine;
        });
        out.insert(out.end(), mine.begin(), mine.end());
    }
    return out;
}

namespace {

// One driver step: the first admissible move, scanning blocks left to right
// and opening hole speed classes from the second-fastest downward.
std::optional<MoveCandidate> next_move(const Schedule& s, const EnergyParams& params) {
    auto blocks = supported_set_blocks(s);
    std::vector<Rational> classes;  // distinct speeds, descending
    for (const auto& c : s.machines->speeds())
        if (classes.empty() || classes.back() != c) classes.push_back(c);

    for (const auto& block : blocks) {
        auto cands = enumerate_moves(s, params, block);
        if (cands.empty()) continue;
        for (size_t cls = 1; cls < classes.size(); ++cls) {
            for (const auto& mv : cands)
                if (mv.target.speed >= classes[cls]) return mv;
        }
    }
    return std::nullopt;
}

}  // namespace

Schedule save_energy(const Schedule& schedule, const EnergyParams& params) {
    Schedule current = schedule;
    // Every applied move strictly decreases energy, so this terminates; the
    // guard turns any violation of that argument into a loud failure instead
    // of a hang.
    long guard = 100000;
    while (auto mv = next_move(current, params)) {
        current = apply_move(current, *mv);
        if (--guard == 0) throw SchedError("save_energy exceeded its move budget (bug)");
    }
    return current;
}

std::optional<MoveCandidate> verify_local_optimality(const Schedule& schedule,
                                                     const EnergyParams& params) {
    for (const auto& block : supported_set_blocks(schedule)) {
        auto cands = enumerate_moves(schedule, params, block);
        if (!cands.empty()) return cands.front();
    }
    return std::nullopt;
}

}  // namespace asymsched
