#include "asymsched/instance_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "asymsched/errors.hpp"

namespace asymsched {

using nlohmann::json;

namespace {

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    throw ParseError("expected a rational as integer or \"p/q\" string");
}

}  // namespace

Instance instance_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("instance JSON: ") + e.what());
    }
    if (!j.contains("n") || !j.contains("speeds"))
        throw ParseError("instance JSON needs \"n\" and \"speeds\"");
    int n = j.at("n").get<int>();
    std::vector<std::pair<int, int>> edges;
    if (j.contains("edges"))
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw ParseError("edges must be [u,v] pairs");
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
    std::vector<Rational> speeds;
    for (const auto& s : j.at("speeds")) speeds.push_back(rational_from_json(s));

    Instance inst;
    inst.graph = std::make_shared<TaskGraph>(TaskGraph::validate_dag(n, std::move(edges)));
    inst.machines = std::make_shared<MachineConfig>(std::move(speeds));
    if (j.contains("chains")) {
        std::vector<std::vector<int>> lists;
        for (const auto& c : j.at("chains")) lists.push_back(c.get<std::vector<int>>());
        inst.chains = std::make_shared<ChainSet>(chains_from_lists(*inst.graph, std::move(lists)));
    } else {
        inst.chains = std::make_shared<ChainSet>(decompose_chains(*inst.graph));
    }
    return inst;
}

std::string instance_to_json(const Instance& instance) {
    json j;
    j["n"] = instance.graph->task_count();
    json edges = json::array();
    for (auto [u, v] : instance.graph->edges()) edges.push_back({u, v});
    j["edges"] = edges;
    json speeds = json::array();
    for (const auto& s : instance.machines->speeds()) speeds.push_back(s.str());
    j["speeds"] = speeds;
    if (instance.chains) {
        json chains = json::array();
        for (const auto& c : instance.chains->chains()) chains.push_back(c);
        j["chains"] = chains;
    }
    return j.dump();
}

Schedule schedule_from_json(const std::string& text, const Instance& instance) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("schedule JSON: ") + e.what());
    }
    Schedule s;
    s.graph = instance.graph;
    s.machines = instance.machines;
    if (!j.contains("segments")) throw ParseError("schedule JSON needs \"segments\"");
    for (const auto& seg : j.at("segments")) {
        s.segments.push_back(Segment{seg.at("task").get<int>(), seg.at("machine").get<int>(),
                                     rational_from_json(seg.at("start")),
                                     rational_from_json(seg.at("end"))});
    }
    return s;
}

std::string schedule_to_json(const Schedule& schedule) {
    json j;
    json segs = json::array();
    std::vector<Segment> ordered = schedule.segments;
    std::sort(ordered.begin(), ordered.end(), [](const Segment& a, const Segment& b) {
        if (a.start != b.start) return a.start < b.start;
        if (a.machine != b.machine) return a.machine < b.machine;
        return a.task < b.task;
    });
    for (const auto& seg : ordered) {
        json o;
        o["task"] = seg.task;
        o["machine"] = seg.machine;
        o["start"] = seg.start.str();
        o["end"] = seg.end.str();
        segs.push_back(o);
    }
    j["segments"] = segs;
    return j.dump();
}

std::string instance_digest(const Instance& instance) {
    std::string canon = instance_to_json(instance);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex;
    for (int i = 15; i >= 0; --i) os << ((h >> (4 * i)) & 0xf);
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path);
    out << content;
}

Instance load_instance(const std::string& path) { return instance_from_json(read_file(path)); }
void save_instance(const Instance& instance, const std::string& path) {
    write_file(path, instance_to_json(instance) + "\n");
}
Schedule load_schedule(const std::string& path, const Instance& instance) {
    return schedule_from_json(read_file(path), instance);
}
void save_schedule(const Schedule& schedule, const std::string& path) {
    write_file(path, schedule_to_json(schedule) + "\n");
}

}  // namespace asymsched
