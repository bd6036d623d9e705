#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "asymsched/generator.hpp"
#include "asymsched/task_model.hpp"

namespace asymsched::cli {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitSizeGuard = 3;

struct GenOptions {
    GeneratorSpec spec;
    std::string out;  // instance JSON path
};

struct SolveOptions {
    std::string instance_path;
    std::string algo = "remnants";  // remnants | lp-round | list | oracle
    std::uint64_t seed = 0;
    int trials = 0;  // 0 = pipeline default
    bool a2 = false;
    bool trace = false;
    std::optional<long> alpha;  // adds energy to the report
    std::string out_schedule;
    std::string csv;         // append a report row (bench columns)
    std::string trials_csv;  // lp-round per-trial rows
    std::string assign = "all-fast";  // for --algo list
    bool use_float = false;
    bool timing = false;
    bool gantt = false;
};

struct ValidateOptions {
    std::string instance_path;
    std::string schedule_path;
};

struct BoundsOptions {
    std::string instance_path;
    bool as_json = false;
    bool use_float = false;
};

struct OptimizeOptions {
    std::string instance_path;
    std::string schedule_path;
    std::string alpha = "2";
    bool approx = false;  // allow non-integer alpha (fixed-precision energies)
    std::string out_schedule;
    bool report = false;
    bool use_float = false;
};

struct TransformOptions {
    std::string instance_path;
    std::string schedule_path;
    std::string target_path;  // JSON with "speeds"
    std::string out_schedule;
    bool use_float = false;
};

struct BenchOptions {
    std::string corpus_dir;
    std::vector<std::string> algos;
    std::uint64_t seed = 0;
    int trials = 0;
    long alpha = 2;
    bool timing = false;
    bool use_float = false;
    std::string out_csv;
};

int cmd_gen(const GenOptions& options, std::ostream& out, std::ostream& err);
int cmd_solve(const SolveOptions& options, std::ostream& out, std::ostream& err);
int cmd_validate(const ValidateOptions& options, std::ostream& out, std::ostream& err);
int cmd_bounds(const BoundsOptions& options, std::ostream& out, std::ostream& err);
int cmd_optimize_energy(const OptimizeOptions& options, std::ostream& out, std::ostream& err);
int cmd_transform_sym(const TransformOptions& options, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream& err);

// Bench/solve CSV header (single source of truth, documented in the README).
std::string csv_header(bool timing);

std::vector<Rational> parse_speed_list(const std::string& csv);

}  // namespace asymsched::cli
