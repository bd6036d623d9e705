#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "asymsched/rational.hpp"

namespace asymsched {

// DAG of unit tasks. Every task has unit processing requirement; edges are
// precedence constraints. Acyclicity is checked at construction and a
// topological order is cached.
class TaskGraph {
public:
    static TaskGraph validate_dag(int n, std::vector<std::pair<int, int>> edges);

    int task_count() const { return n_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& predecessors(int task) const { return preds_[task]; }
    const std::vector<int>& successors(int task) const { return succs_[task]; }
    const std::vector<int>& topological_order() const { return topo_; }
    bool has_edge(int u, int v) const;

private:
    TaskGraph() = default;
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;  // sorted, deduplicated
    std::vector<std::vector<int>> preds_, succs_;
    std::vector<int> topo_;
};

// Disjoint chains covering all tasks of a graph, sorted by non-increasing
// length. Edges of the source graph that are not consecutive within a chain
// are kept as cross_edges; schedulers either honor or reject them.
class ChainSet {
public:
    const std::vector<std::vector<int>>& chains() const { return chains_; }
    std::vector<int> lengths() const;
    int total_tasks() const;
    const std::vector<std::pair<int, int>>& cross_edges() const { return cross_edges_; }

    // Chain index and position of each task; -1 when the set is empty.
    int chain_of(int task) const { return chain_of_[task]; }
    int position_of(int task) const { return position_of_[task]; }

    friend ChainSet decompose_chains(const TaskGraph& graph);
    friend ChainSet chains_from_lists(const TaskGraph& graph,
                                      std::vector<std::vector<int>> lists);

private:
    void index(int n);
    std::vector<std::vector<int>> chains_;
    std::vector<std::pair<int, int>> cross_edges_;
    std::vector<int> chain_of_, position_of_;
};

// Greedy longest-path peeling: repeatedly extract a longest directed path of
// the remaining graph (ties broken toward smallest task ids), remove its
// nodes. Not the full maximal-chain decomposition of the literature, but a
// deterministic decomposition with the same interface.
ChainSet decompose_chains(const TaskGraph& graph);

// Builds a ChainSet from explicit task-id lists (e.g. from an instance file),
// validating disjoint cover and that consecutive entries are graph edges.
ChainSet chains_from_lists(const TaskGraph& graph, std::vector<std::vector<int>> lists);

struct TwoSpeedView {
    int m;
    int m_s;        // number of fast processors
    Rational s;     // fast speed, > 1
};

// Machine speeds sorted non-increasing; total capability is the sum. The
// two-speed view is recognized iff the speed multiset is {s x m_s, 1 x (m-m_s)}
// with s > 1.
class MachineConfig {
public:
    explicit MachineConfig(std::vector<Rational> speeds);

    int machine_count() const { return static_cast<int>(speeds_.size()); }
    const std::vector<Rational>& speeds() const { return speeds_; }
    const Rational& speed(int machine) const { return speeds_[machine]; }
    const Rational& total_capability() const { return total_; }
    const std::optional<TwoSpeedView>& two_speed_view() const { return two_speed_; }

private:
    std::vector<Rational> speeds_;
    Rational total_;
    std::optional<TwoSpeedView> two_speed_;
};

std::optional<TwoSpeedView> is_two_speed(const MachineConfig& config);

struct EnergyParams {
    Rational alpha;  // strictly > 1
    explicit EnergyParams(Rational a);
};

enum class SpeedClass { Fast, Slow };
using SpeedAssignment = std::vector<SpeedClass>;

// A full problem instance: graph, machines and (optionally) a chain view.
struct Instance {
    std::shared_ptr<const TaskGraph> graph;
    std::shared_ptr<const MachineConfig> machines;
    std::shared_ptr<const ChainSet> chains;  // may be null for pure DAG input

    // True when the instance is a pure chain collection (chains present,
    // no cross-chain edges).
    bool is_chain_instance() const {
        return chains && chains->cross_edges().empty();
    }
};

// Convenience constructor used all over tests and the CLI: a chain collection
// given by lengths, with chain edges only.
Instance make_chain_instance(const std::vector<int>& lengths, std::vector<Rational> speeds);

}  // namespace asymsched
