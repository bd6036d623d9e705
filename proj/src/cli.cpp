#include "asymsched/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "asymsched/bounds.hpp"
#include "asymsched/errors.hpp"
#include "asymsched/instance_io.hpp"
#include "asymsched/lprelax.hpp"
#include "asymsched/oracle.hpp"
#include "asymsched/remnants.hpp"
#include "asymsched/save_energy.hpp"
#include "asymsched/schedule.hpp"

namespace asymsched::cli {

using nlohmann::json;

namespace {

std::string render(const Rational& q, bool use_float) {
    if (!use_float) return q.str();
    std::ostringstream os;
    os << std::setprecision(12) << q.to_double();
    return os.str();
}

struct SolveProduct {
    Schedule schedule;
    json extra;  // algorithm-specific report fields
    std::optional<Rational> d_bar;
    std::optional<Rational> cds_sum;
    std::optional<int> n_s;
};

json bounds_to_json(const BoundReport& b, bool use_float) {
    json o;
    o["A"] = render(b.A, use_float);
    o["B_general"] = render(b.B_general, use_float);
    if (b.B_paper_two_speed) o["B_paper_two_speed"] = render(*b.B_paper_two_speed, use_float);
    if (b.single_fast) o["single_fast"] = render(*b.single_fast, use_float);
    o["max_lower"] = render(b.max_lower, use_float);
    return o;
}

SolveProduct run_algo(const Instance& instance, const SolveOptions& opt) {
    SolveProduct product;
    if (opt.algo == "remnants") {
        auto result = remnants_schedule(instance);
        product.schedule = std::move(result.schedule);
        if (opt.trace) {
            json rounds = json::array();
            for (const auto& tr : result.trace) {
                json r;
                r["round"] = tr.round;
                r["g"] = tr.g;
                json rem = json::array();
                for (auto [chain, len] : tr.remnants) rem.push_back({chain, len});
                r["remnants"] = rem;
                json fast = json::array();
                for (auto [chain, count] : tr.fast_picks) fast.push_back({chain, count});
                r["fast_picks"] = fast;
                json slow = json::array();
                for (auto [chain, machine] : tr.slow_picks) slow.push_back({chain, machine});
                r["slow_picks"] = slow;
                rounds.push_back(r);
            }
            product.extra["trace"] = rounds;
        }
    } else if (opt.algo == "oracle") {
        auto [value, sched] = exact_optimal_schedule(instance);
        product.schedule = std::move(sched);
        product.extra["optimal"] = true;
        (void)value;
    } else if (opt.algo == "list") {
        SpeedClass cls;
        if (opt.assign == "all-fast")
            cls = SpeedClass::Fast;
        else if (opt.assign == "all-slow")
            cls = SpeedClass::Slow;
        else
            throw InvalidSpec("--assign must be all-fast or all-slow");
        SpeedAssignment assignment(instance.graph->task_count(), cls);
        product.schedule = speed_based_list_schedule(instance, assignment);
        int n_s = 0;
        for (auto c : assignment)
            if (c == SpeedClass::Fast) ++n_s;
        product.n_s = n_s;
        auto lbq = list_bound_quantities(*instance.graph, assignment, *instance.machines);
        product.cds_sum = lbq.sum();
    } else if (opt.algo == "lp-round") {
        RoundingConfig rc;
        rc.seed = opt.seed;
        rc.trials = opt.trials;
        rc.a2_threshold_enabled = opt.a2;
        auto outcome = rounding_pipeline(instance, rc);
        LpSolution lp = solve_lp(instance);
        product.d_bar = lp.d;
        product.extra["best_trial"] = outcome.best_trial;
        product.extra["trials_run"] = static_cast<int>(outcome.trials.size());
        int n_s = 0;
        for (auto c : outcome.assignment)
            if (c == SpeedClass::Fast) ++n_s;
        product.n_s = n_s;
        auto lbq = list_bound_quantities(*instance.graph, outcome.assignment, *instance.machines);
        product.cds_sum = lbq.sum();
        product.schedule = std::move(outcome.schedule);
        if (!opt.trials_csv.empty()) {
            std::ostringstream os;
            os << "trial,makespan,n_s,C,D_s,D_1\n";
            for (const auto& t : outcome.trials)
                os << t.trial << "," << render(t.trial_makespan, opt.use_float) << "," << t.n_s
                   << "," << render(t.C, opt.use_float) << "," << render(t.D_s, opt.use_float)
                   << "," << render(t.D_1, opt.use_float) << "\n";
            write_file(opt.trials_csv, os.str());
        }
    } else {
        throw InvalidSpec("unknown algorithm '" + opt.algo + "'");
    }
    return product;
}

}  // namespace

std::string csv_header(bool timing) {
    std::string h =
        "instance,algo,n,m,makespan,bound_A,bound_B_general,max_lower,oracle,ratio_lower,"
        "ratio_oracle,energy_before,energy_after,n_s,d_bar,c_ds_d1,error";
    if (timing) h += ",wall_ms";
    return h;
}

std::vector<Rational> parse_speed_list(const std::string& csv) {
    std::vector<Rational> out;
    std::string token;
    std::istringstream is(csv);
    while (std::getline(is, token, ',')) {
        if (!token.empty()) out.push_back(Rational::parse(token));
    }
    if (out.empty()) throw InvalidSpec("empty speed list");
    return out;
}

int cmd_gen(const GenOptions& options, std::ostream& out, std::ostream& err) {
    try {
        Instance instance = generate_instance(options.spec);
        std::string text = instance_to_json(instance) + "\n";
        if (options.out.empty()) {
            out << text;
        } else {
            write_file(options.out, text);
            out << "wrote " << options.out << " (digest " << instance_digest(instance) << ")\n";
        }
        return kExitOk;
    } catch (const SchedError& e) {
        err << "gen: " << e.what() << "\n";
        return kExitUsage;
    }
}

int cmd_solve(const SolveOptions& options, std::ostream& out, std::ostream& err) {
    try {
        Instance instance = load_instance(options.instance_path);
        auto t0 = std::chrono::steady_clock::now();
        SolveProduct product = run_algo(instance, options);
        auto t1 = std::chrono::steady_clock::now();
        double wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

        if (auto violation = validate(product.schedule)) {
            err << "solve: produced an invalid schedule: " << violation->describe() << "\n";
            return kExitValidation;
        }
        Rational ms = makespan(product.schedule);
        BoundReport bounds = bound_report(instance);

        json report;
        report["instance"] = instance_digest(instance);
        report["algo"] = options.algo;
        report["n"] = instance.graph->task_count();
        report["m"] = instance.machines->machine_count();
        report["makespan"] = render(ms, options.use_float);
        report["bounds"] = bounds_to_json(bounds, options.use_float);
        if (options.alpha) {
            Rational e = energy(product.schedule, Rational(*options.alpha));
            report["alpha"] = *options.alpha;
            report["energy"] = render(e, options.use_float);
        }
        if (options.algo == "lp-round") {
            report["seed"] = options.seed;
            report["trials"] = options.trials;
        }
        if (product.d_bar) report["d_bar"] = render(*product.d_bar, options.use_float);
        if (product.cds_sum) report["c_ds_d1"] = render(*product.cds_sum, options.use_float);
        if (product.n_s) report["n_s"] = *product.n_s;
        for (auto& [key, value] : product.extra.items()) report[key] = value;
        if (options.timing) report["wall_ms"] = wall_ms;
        out << report.dump() << "\n";
        if (options.gantt) out << render_gantt(product.schedule);

        if (!options.out_schedule.empty())
            save_schedule(product.schedule, options.out_schedule);

        if (!options.csv.empty()) {
            bool fresh = !std::filesystem::exists(options.csv);
            std::ofstream csv(options.csv, std::ios::app);
            if (fresh) csv << csv_header(options.timing) << "\n";
            std::vector<std::string> fields = {
                options.instance_path,
                options.algo,
                std::to_string(instance.graph->task_count()),
                std::to_string(instance.machines->machine_count()),
                render(ms, options.use_float),
                render(bounds.A, options.use_float),
                render(bounds.B_general, options.use_float),
                render(bounds.max_lower, options.use_float),
                "",  // oracle
                "",  // ratio_lower
                "",  // ratio_oracle (bench fills these)
                "",  // energy_before
                "",  // energy_after
                product.n_s ? std::to_string(*product.n_s) : "",
                product.d_bar ? render(*product.d_bar, options.use_float) : "",
                product.cds_sum ? render(*product.cds_sum, options.use_float) : "",
                ""};  // error
            std::string row;
            for (size_t i = 0; i < fields.size(); ++i) row += (i ? "," : "") + fields[i];
            if (options.timing) row += "," + std::to_string(wall_ms);
            csv << row << "\n";
        }
        return kExitOk;
    } catch (const SizeLimitExceeded& e) {
        err << "solve: " << e.what() << "\n";
        return kExitSizeGuard;
    } catch (const SchedError& e) {
        err << "solve: " << e.what() << "\n";
        return kExitValidation;
    }
}

int cmd_validate(const ValidateOptions& options, std::ostream& out, std::ostream& err) {
    try {
        Instance instance = load_instance(options.instance_path);
        Schedule schedule = load_schedule(options.schedule_path, instance);
        if (auto violation = validate(schedule)) {
            err << "invalid: " << violation->describe() << "\n";
            return kExitValidation;
        }
        out << "valid: makespan " << makespan(schedule).str() << "\n";
        return kExitOk;
    } catch (const SchedError& e) {
        err << "validate: " << e.what() << "\n";
        return kExitValidation;
    }
}

int cmd_bounds(const BoundsOptions& options, std::ostream& out, std::ostream& err) {
    try {
        Instance instance = load_instance(options.instance_path);
        BoundReport b = bound_report(instance);
        if (options.as_json) {
            out << bounds_to_json(b, options.use_float).dump() << "\n";
        } else {
            auto line = [&](const std::string& name, const std::string& value) {
                out << std::left << std::setw(22) << name << value << "\n";
            };
            line("A (average load)", render(b.A, options.use_float));
            line("B (prefix ratio)", render(b.B_general, options.use_float));
            if (b.B_paper_two_speed)
                line("B (printed variant)", render(*b.B_paper_two_speed, options.use_float));
            if (b.single_fast) line("single-fast", render(*b.single_fast, options.use_float));
            line("max lower bound", render(b.max_lower, options.use_float));
        }
        return kExitOk;
    } catch (const SchedError& e) {
        err << "bounds: " << e.what() << "\n";
        return kExitValidation;
    }
}

int cmd_optimize_energy(const OptimizeOptions& options, std::ostream& out, std::ostream& err) {
    try {
        Instance instance = load_instance(options.instance_path);
        Schedule schedule = load_schedule(options.schedule_path, instance);
        if (auto violation = validate(schedule)) {
            err << "optimize-energy: input schedule invalid: " << violation->describe() << "\n";
            return kExitValidation;
        }
        Rational alpha = Rational::parse(options.alpha);
        if (!options.approx && (!alpha.is_integer() || alpha < Rational(2))) {
            err << "optimize-energy: alpha must be an integer >= 2 (use --approx for the "
                   "fixed-precision mode)\n";
            return kExitUsage;
        }
        EnergyParams params(alpha);
        bool exact_mode = alpha.is_integer();
        Rational before = exact_mode ? energy(schedule, params) : energy_approx(schedule, alpha);
        Rational ms_before = makespan(schedule);
        Schedule optimized = save_energy(schedule, params);
        Rational after = exact_mode ? energy(optimized, params) : energy_approx(optimized, alpha);
        Rational ms_after = makespan(optimized);
        if (!options.out_schedule.empty()) save_schedule(optimized, options.out_schedule);
        if (options.report) {
            json r;
            r["alpha"] = alpha.str();
            r["mode"] = exact_mode ? "exact" : "approx";
            r["energy_before"] = render(before, options.use_float);
            r["energy_after"] = render(after, options.use_float);
            r["makespan_before"] = render(ms_before, options.use_float);
            r["makespan_after"] = render(ms_after, options.use_float);
            out << r.dump() << "\n";
        }
        return kExitOk;
    } catch (const SchedError& e) {
        err << "optimize-energy: " << e.what() << "\n";
        return kExitValidation;
    }
}

int cmd_transform_sym(const TransformOptions& options, std::ostream& out, std::ostream& err) {
    try {
        Instance instance = load_instance(options.instance_path);
        Schedule schedule = load_schedule(options.schedule_path, instance);
        if (auto violation = validate(schedule)) {
            err << "transform-sym: input schedule invalid: " << violation->describe() << "\n";
            return kExitValidation;
        }
        const auto& speeds = instance.machines->speeds();
        for (const auto& s : speeds)
            if (s != speeds.front())
                throw InvalidSpec("transform-sym: the instance machines must be symmetric");
        SymmetricConfig sym{instance.machines->machine_count(), speeds.front()};

        json tj = json::parse(read_file(options.target_path));
        std::vector<Rational> target_speeds;
        for (const auto& s : tj.at("speeds"))
            target_speeds.push_back(s.is_string() ? Rational::parse(s.get<std::string>())
                                                  : Rational(s.get<long>()));
        auto target = std::make_shared<MachineConfig>(target_speeds);

        Schedule transformed = asymmetrize(schedule, sym, target);
        if (auto violation = validate(transformed)) {
            err << "transform-sym: produced an invalid schedule: " << violation->describe() << "\n";
            return kExitValidation;
        }
        if (!options.out_schedule.empty()) save_schedule(transformed, options.out_schedule);
        json r;
        r["symmetric_makespan"] = render(makespan(schedule), options.use_float);
        r["transformed_makespan"] = render(makespan(transformed), options.use_float);
        out << r.dump() << "\n";
        return kExitOk;
    } catch (const SchedError& e) {
        err << "transform-sym: " << e.what() << "\n";
        return kExitValidation;
    }
}

int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream& err) {
    try {
        std::vector<std::string> paths;
        for (const auto& entry : std::filesystem::directory_iterator(options.corpus_dir))
            if (entry.is_regular_file() && entry.path().extension() == ".json")
                paths.push_back(entry.path().string());
        std::sort(paths.begin(), paths.end());

        std::ostringstream csv;
        csv << csv_header(options.timing) << "\n";
        for (const auto& path : paths) {
            for (const auto& algo : options.algos) {
                std::ostringstream row;
                row << path << "," << algo << ",";
                try {
                    Instance instance = load_instance(path);
                    int n = instance.graph->task_count();
                    int m = instance.machines->machine_count();
                    BoundReport bounds = bound_report(instance);

                    auto t0 = std::chrono::steady_clock::now();
                    SolveOptions so;
                    so.algo = algo;
                    so.seed = options.seed;
                    so.trials = options.trials;
                    SolveProduct product = run_algo(instance, so);
                    auto t1 = std::chrono::steady_clock::now();
                    double wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

                    if (auto violation = validate(product.schedule))
                        throw SchedError("invalid schedule: " + violation->describe());
                    Rational ms = makespan(product.schedule);

                    std::optional<Rational> oracle_value;
                    if (algo == "oracle") {
                        oracle_value = ms;
                    } else {
                        try {
                            oracle_value = exact_optimal_makespan(instance);
                        } catch (const SizeLimitExceeded&) {
                        }
                    }

                    Rational alpha(options.alpha);
                    Rational e_before = energy(product.schedule, alpha);
                    Schedule optimized = save_energy(product.schedule, EnergyParams(alpha));
                    Rational e_after = energy(optimized, alpha);

                    row << n << "," << m << "," << render(ms, options.use_float) << ","
                        << render(bounds.A, options.use_float) << ","
                        << render(bounds.B_general, options.use_float) << ","
                        << render(bounds.max_lower, options.use_float) << ","
                        << (oracle_value ? render(*oracle_value, options.use_float) : "") << ","
                        << (bounds.max_lower.sign() > 0
                                ? render(ms / bounds.max_lower, options.use_float)
                                : "")
                        << ","
                        << (oracle_value && oracle_value->sign() > 0
                                ? render(ms / *oracle_value, options.use_float)
                                : "")
                        << "," << render(e_before, options.use_float) << ","
                        << render(e_after, options.use_float) << ","
                        << (product.n_s ? std::to_string(*product.n_s) : "") << ","
                        << (product.d_bar ? render(*product.d_bar, options.use_float) : "") << ","
                        << (product.cds_sum ? render(*product.cds_sum, options.use_float) : "")
                        << ",";
                    if (options.timing) row << "," << wall_ms;
                } catch (const SchedError& e) {
                    std::string msg = e.what();
                    std::replace(msg.begin(), msg.end(), ',', ';');
                    // 14 empty fields (n .. c_ds_d1), then the error column.
                    row << ",,,,,,,,,,,,,," << msg;
                    if (options.timing) row << ",";
                }
                csv << row.str() << "\n";
            }
        }
        if (options.out_csv.empty()) {
            out << csv.str();
        } else {
            write_file(options.out_csv, csv.str());
            out << "wrote " << options.out_csv << " (" << paths.size() << " instances)\n";
        }
        return kExitOk;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "bench: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SchedError& e) {
        err << "bench: " << e.what() << "\n";
        return kExitValidation;
    }
}

}  // namespace asymsched::cli
