#include "asymsched/task_model.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "asymsched/errors.hpp"

namespace asymsched {

TaskGraph TaskGraph::validate_dag(int n, std::vector<std::pair<int, int>> edges) {
    if (n < 0) throw InvalidTaskId("task count must be non-negative");
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw InvalidTaskId("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                ") references a task outside [0," + std::to_string(n) + ")");
        if (u == v)
            throw CycleDetected("self-loop on task " + std::to_string(u), {u});
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    TaskGraph g;
    g.n_ = n;
    g.edges_ = std::move(edges);
    g.preds_.assign(n, {});
    g.succs_.assign(n, {});
    for (auto [u, v] : g.edges_) {
        g.succs_[u].push_back(v);
        g.preds_[v].push_back(u);
    }

    // Kahn topological sort, smallest id first (deterministic order).
    std::vector<int> indeg(n, 0);
    for (auto [u, v] : g.edges_) indeg[v]++;
    std::set<int> frontier;
    for (int i = 0; i < n; ++i)
        if (indeg[i] == 0) frontier.insert(i);
    g.topo_.reserve(n);
    while (!frontier.empty()) {
        int u = *frontier.begin();
        frontier.erase(frontier.begin());
        g.topo_.push_back(u);
        for (int v : g.succs_[u])
            if (--indeg[v] == 0) frontier.insert(v);
    }
    if (static_cast<int>(g.topo_.size()) != n) {
        // Recover one offending cycle by walking predecessors among the
        // unsorted residue until a node repeats.
        std::vector<bool> placed(n, false);
        for (int u : g.topo_) placed[u] = true;
        int start = 0;
        while (placed[start]) ++start;
        std::vector<int> path;
        std::vector<int> seen_at(n, -1);
        int cur = start;
        while (seen_at[cur] < 0) {
            seen_at[cur] = static_cast<int>(path.size());
            path.push_back(cur);
            for (int p : g.preds_[cur]) {
                if (!placed[p]) {
                    cur = p;
                    break;
                }
            }
        }
        std::vector<int> cycle(path.begin() + seen_at[cur], path.end());
        std::reverse(cycle.begin(), cycle.end());
        std::string msg = "cycle detected:";
        for (int t : cycle) msg += " " + std::to_string(t);
        throw CycleDetected(msg, cycle);
    }
    return g;
}

bool TaskGraph::has_edge(int u, int v) const {
    return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(u, v));
}

void ChainSet::index(int n) {
    chain_of_.assign(n, -1);
    position_of_.assign(n, -1);
    for (int c = 0; c < static_cast<int>(chains_.size()); ++c)
        for (int p = 0; p < static_cast<int>(chains_[c].size()); ++p) {
            chain_of_[chains_[c][p]] = c;
            position_of_[chains_[c][p]] = p;
        }
}

std::vector<int> ChainSet::lengths() const {
    std::vector<int> out;
    out.reserve(chains_.size());
    for (const auto& c : chains_) out.push_back(static_cast<int>(c.size()));
    return out;
}

int ChainSet::total_tasks() const {
    int n = 0;
    for (const auto& c : chains_) n += static_cast<int>(c.size());
    return n;
}

namespace {

// Longest directed path in the subgraph induced by `alive`, preferring the
// lexicographically smallest task-id sequence among equal lengths.
std::vector<int> longest_alive_path(const TaskGraph& g, const std::vector<bool>& alive) {
    int n = g.task_count();
    std::vector<int> len(n, 0), next(n, -1);
    const auto& topo = g.topological_order();
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        int u = *it;
        if (!alive[u]) continue;
        len[u] = 1;
        next[u] = -1;
        for (int v : g.successors(u)) {
            if (!alive[v]) continue;
            if (len[v] + 1 > len[u] || (len[v] + 1 == len[u] && (next[u] < 0 || v < next[u]))) {
                len[u] = len[v] + 1;
                next[u] = v;
            }
        }
    }
    int best = -1;
    for (int u = 0; u < n; ++u)
        if (alive[u] && (best < 0 || len[u] > len[best])) best = u;
    std::vector<int> path;
    for (int u = best; u >= 0; u = next[u]) path.push_back(u);
    return path;
}

std::vector<std::pair<int, int>> collect_cross_edges(const TaskGraph& g, const ChainSet& cs) {
    std::vector<std::pair<int, int>> cross;
    for (auto [u, v] : g.edges()) {
        bool within = cs.chain_of(u) == cs.chain_of(v) &&
                      cs.position_of(v) == cs.position_of(u) + 1;
        if (!within) cross.emplace_back(u, v);
    }
    return cross;
}

}  // namespace

ChainSet decompose_chains(const TaskGraph& graph) {
    ChainSet cs;
    int n = graph.task_count();
    std::vector<bool> alive(n, true);
    int remaining = n;
    while (remaining > 0) {
        auto path = longest_alive_path(graph, alive);
        for (int u : path) alive[u] = false;
        remaining -= static_cast<int>(path.size());
        cs.chains_.push_back(std::move(path));
    }
    // Peeling yields non-increasing lengths by construction.
    cs.index(n);
    cs.cross_edges_ = collect_cross_edges(graph, cs);
    return cs;
}

ChainSet chains_from_lists(const TaskGraph& graph, std::vector<std::vector<int>> lists) {
    int n = graph.task_count();
    std::vector<int> seen(n, 0);
    for (const auto& list : lists) {
        if (list.empty()) throw InvalidChainSet("empty chain in chain list");
        for (size_t i = 0; i < list.size(); ++i) {
            int t = list[i];
            if (t < 0 || t >= n) throw InvalidTaskId("chain references task " + std::to_string(t));
            if (seen[t]++) throw InvalidChainSet("task " + std::to_string(t) + " appears twice");
            if (i > 0 && !graph.has_edge(list[i - 1], t))
                throw InvalidChainSet("consecutive chain entries " + std::to_string(list[i - 1]) +
                                      "->" + std::to_string(t) + " are not a graph edge");
        }
    }
    for (int t = 0; t < n; ++t)
        if (!seen[t]) throw InvalidChainSet("task " + std::to_string(t) + " not covered by chains");

    std::stable_sort(lists.begin(), lists.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });
    ChainSet cs;
    cs.chains_ = std::move(lists);
    cs.index(n);
    cs.cross_edges_ = collect_cross_edges(graph, cs);
    return cs;
}

MachineConfig::MachineConfig(std::vector<Rational> speeds) : speeds_(std::move(speeds)) {
    if (speeds_.empty()) throw InvalidSpec("machine config needs at least one machine");
    for (const auto& s : speeds_)
        if (s.sign() <= 0) throw InvalidSpec("machine speeds must be positive");
    std::sort(speeds_.begin(), speeds_.end(), [](const Rational& a, const Rational& b) { return b < a; });
    total_ = Rational(0);
    for (const auto& s : speeds_) total_ += s;

    const Rational one(1);
    if (speeds_.front() > one) {
        const Rational& s = speeds_.front();
        int m_s = 0;
        bool uniform_tail = true;
        for (const auto& c : speeds_) {
            if (c == s) {
                ++m_s;
            } else if (c != one) {
                uniform_tail = false;
                break;
            }
        }
        // m_s counted the fast prefix only if nothing between s and 1 exists.
        if (uniform_tail) {
            bool prefix_ok = true;
            for (int i = 0; i < m_s; ++i) prefix_ok = prefix_ok && speeds_[i] == s;
            if (prefix_ok) two_speed_ = TwoSpeedView{machine_count(), m_s, s};
        }
    }
}

std::optional<TwoSpeedView> is_two_speed(const MachineConfig& config) {
    return config.two_speed_view();
}

EnergyParams::EnergyParams(Rational a) : alpha(std::move(a)) {
    if (!(alpha > Rational(1))) throw InvalidSpec("alpha must be strictly greater than 1");
}

Instance make_chain_instance(const std::vector<int>& lengths, std::vector<Rational> speeds) {
    int n = 0;
    for (int l : lengths) {
        if (l <= 0) throw InvalidSpec("chain lengths must be positive");
        n += l;
    }
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> lists;
    int next = 0;
    for (int l : lengths) {
        std::vector<int> chain;
        for (int i = 0; i < l; ++i) {
            if (i > 0) edges.emplace_back(next - 1, next);
            chain.push_back(next++);
        }
        lists.push_back(std::move(chain));
    }
    auto graph = std::make_shared<TaskGraph>(TaskGraph::validate_dag(n, std::move(edges)));
    auto chains = std::make_shared<ChainSet>(chains_from_lists(*graph, std::move(lists)));
    auto machines = std::make_shared<MachineConfig>(std::move(speeds));
    return Instance{graph, machines, chains};
}

}  // namespace asymsched
