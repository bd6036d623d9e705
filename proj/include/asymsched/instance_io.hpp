#pragma once

#include <cstdint>
#include <string>

#include "asymsched/schedule.hpp"
#include "asymsched/task_model.hpp"

namespace asymsched {

// Instance file: {"n": int, "edges": [[u,v],...], "speeds": ["4","1","1"]}
// with speeds as rational strings "p" or "p/q" (plain integers accepted).
// Optional "chains": [[ids],...] bypasses decomposition.
Instance instance_from_json(const std::string& text);
std::string instance_to_json(const Instance& instance);

Instance load_instance(const std::string& path);
void save_instance(const Instance& instance, const std::string& path);

// Schedule file: {"segments": [{"task":0,"machine":0,"start":"0","end":"1/4"},...]}.
// Machine indices refer to the instance's speeds sorted non-increasing.
Schedule schedule_from_json(const std::string& text, const Instance& instance);
std::string schedule_to_json(const Schedule& schedule);

Schedule load_schedule(const std::string& path, const Instance& instance);
void save_schedule(const Schedule& schedule, const std::string& path);

// Stable content digest (FNV-1a 64 over the canonical instance JSON).
std::string instance_digest(const Instance& instance);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace asymsched
