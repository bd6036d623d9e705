#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "asymsched/cli.hpp"
#include "asymsched/errors.hpp"

using namespace asymsched;

int main(int argc, char** argv) {
    CLI::App app{"Scheduling of unit-task DAGs and chains on asymmetric multiprocessors"};
    app.require_subcommand(1);

    // gen
    cli::GenOptions gen;
    std::string gen_kind = "chains";
    std::string gen_speeds;
    std::string gen_widths;
    std::string gen_p = "1/2";
    auto* cgen = app.add_subcommand("gen", "generate an instance file");
    cgen->add_option("--kind", gen_kind, "chains | layered-dag | random-dag");
    cgen->add_option("--n", gen.spec.n, "task count");
    cgen->add_option("--r", gen.spec.r, "chain count (chains)");
    cgen->add_option("--widths", gen_widths, "comma list of layer widths (layered-dag)");
    cgen->add_option("--p", gen_p, "edge probability as a rational (dags)");
    cgen->add_option("--seed", gen.spec.seed, "generator seed");
    cgen->add_option("--speeds", gen_speeds, "comma list of machine speeds")->required();
    cgen->add_option("--out", gen.out, "output instance path");

    // solve
    cli::SolveOptions solve;
    long solve_alpha = -1;
    auto* csolve = app.add_subcommand("solve", "run a scheduler on an instance");
    csolve->add_option("instance", solve.instance_path, "instance JSON")->required();
    csolve->add_option("--algo", solve.algo, "remnants | lp-round | list | oracle");
    csolve->add_option("--seed", solve.seed, "rounding seed");
    csolve->add_option("--trials", solve.trials, "rounding trials (0 = default 20n)");
    csolve->add_flag("--a2", solve.a2, "enable the short-chain threshold");
    csolve->add_flag("--trace", solve.trace, "emit round traces (remnants)");
    csolve->add_option("--alpha", solve_alpha, "report energy at this integer alpha");
    csolve->add_option("--out", solve.out_schedule, "write the schedule JSON here");
    csolve->add_option("--csv", solve.csv, "append a report row to this CSV");
    csolve->add_option("--trials-csv", solve.trials_csv, "write per-trial rows (lp-round)");
    csolve->add_option("--assign", solve.assign, "all-fast | all-slow (list)");
    csolve->add_flag("--float", solve.use_float, "render decimals instead of rationals");
    csolve->add_flag("--timing", solve.timing, "include wall time (breaks byte determinism)");
    csolve->add_flag("--gantt", solve.gantt, "print a text gantt chart");

    // validate
    cli::ValidateOptions val;
    auto* cval = app.add_subcommand("validate", "check a schedule against an instance");
    cval->add_option("instance", val.instance_path)->required();
    cval->add_option("schedule", val.schedule_path)->required();

    // bounds
    cli::BoundsOptions bounds;
    auto* cbounds = app.add_subcommand("bounds", "print lower bounds for an instance");
    cbounds->add_option("instance", bounds.instance_path)->required();
    cbounds->add_flag("--json", bounds.as_json, "emit JSON instead of a table");
    cbounds->add_flag("--float", bounds.use_float);

    // optimize-energy
    cli::OptimizeOptions opt;
    auto* copt = app.add_subcommand("optimize-energy", "post-process a schedule to save energy");
    copt->add_option("instance", opt.instance_path)->required();
    copt->add_option("schedule", opt.schedule_path)->required();
    copt->add_option("--alpha", opt.alpha, "power exponent (integer >= 2, or p/q with --approx)");
    copt->add_flag("--approx", opt.approx, "allow non-integer alpha (64-bit fixed point)");
    copt->add_option("--out", opt.out_schedule, "write the optimized schedule here");
    copt->add_flag("--report", opt.report, "print before/after energy and makespan");
    copt->add_flag("--float", opt.use_float);

    // transform-sym
    cli::TransformOptions tr;
    auto* ctr = app.add_subcommand("transform-sym",
                                   "map a symmetric-machine schedule onto asymmetric speeds");
    ctr->add_option("instance", tr.instance_path, "instance with uniform speeds")->required();
    ctr->add_option("schedule", tr.schedule_path)->required();
    ctr->add_option("--target", tr.target_path, "JSON file with target \"speeds\"")->required();
    ctr->add_option("--out", tr.out_schedule, "write the transformed schedule here");
    ctr->add_flag("--float", tr.use_float);

    // bench
    cli::BenchOptions bench;
    std::string bench_algos = "remnants";
    auto* cbench = app.add_subcommand("bench", "run algorithms over a corpus directory");
    cbench->add_option("corpus", bench.corpus_dir, "directory of instance JSON files")->required();
    cbench->add_option("--algos", bench_algos, "comma list of algorithms");
    cbench->add_option("--seed", bench.seed);
    cbench->add_option("--trials", bench.trials);
    cbench->add_option("--alpha", bench.alpha, "alpha for the energy columns");
    cbench->add_flag("--timing", bench.timing, "add wall_ms (breaks byte determinism)");
    cbench->add_flag("--float", bench.use_float);
    cbench->add_option("--out", bench.out_csv, "write the CSV here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : cli::kExitUsage;
    }

    try {
        if (cgen->parsed()) {
            if (gen_kind == "chains")
                gen.spec.kind = GeneratorKind::Chains;
            else if (gen_kind == "layered-dag")
                gen.spec.kind = GeneratorKind::LayeredDag;
            else if (gen_kind == "random-dag")
                gen.spec.kind = GeneratorKind::RandomDag;
            else {
                std::cerr << "gen: unknown kind '" << gen_kind << "'\n";
                return cli::kExitUsage;
            }
            gen.spec.speeds = cli::parse_speed_list(gen_speeds);
            if (!gen_widths.empty()) {
                gen.spec.layer_widths.clear();
                for (const auto& w : cli::parse_speed_list(gen_widths))
                    gen.spec.layer_widths.push_back(static_cast<int>(w.num_long()));
            }
            gen.spec.edge_probability = Rational::parse(gen_p);
            return cli::cmd_gen(gen, std::cout, std::cerr);
        }
        if (csolve->parsed()) {
            if (solve_alpha >= 2) solve.alpha = solve_alpha;
            return cli::cmd_solve(solve, std::cout, std::cerr);
        }
        if (cval->parsed()) return cli::cmd_validate(val, std::cout, std::cerr);
        if (cbounds->parsed()) return cli::cmd_bounds(bounds, std::cout, std::cerr);
        if (copt->parsed()) return cli::cmd_optimize_energy(opt, std::cout, std::cerr);
        if (ctr->parsed()) return cli::cmd_transform_sym(tr, std::cout, std::cerr);
        if (cbench->parsed()) {
            bench.algos.clear();
            std::string token;
            std::istringstream is(bench_algos);
            while (std::getline(is, token, ','))
                if (!token.empty()) bench.algos.push_back(token);
            return cli::cmd_bench(bench, std::cout, std::cerr);
        }
    } catch (const SizeLimitExceeded& e) {
        std::cerr << e.what() << "\n";
        return cli::kExitSizeGuard;
    } catch (const SchedError& e) {
        std::cerr << e.what() << "\n";
        return cli::kExitValidation;
    }
    return cli::kExitUsage;
}
