#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "clude/benchmarks.hpp"
#include "clude/errors.hpp"
#include "clude/harness.hpp"

namespace {

// Exit codes: 0 success, 1 usage/config error, 2 runtime/evaluation error,
// 3 I/O error.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitIo = 3;

struct PlanFlags {
    std::string config_file;
    std::string functions;
    std::string dims;
    std::string algos;
    std::string runs;
    std::string seed;
    std::string budget_multiplier;
    std::string out;
    std::string transforms;
    std::string jobs;
    std::string np;
    std::string f;
    std::string cr;
    std::string m;
};

void add_plan_flags(CLI::App& cmd, PlanFlags& flags) {
    cmd.add_option("--config", flags.config_file, "plan file (key = value lines, # comments)");
    cmd.add_option("--functions", flags.functions, "comma-separated function ids (F1..F10)");
    cmd.add_option("--dims", flags.dims, "comma-separated dimensions from {10,30,50,100}");
    cmd.add_option("--algos", flags.algos, "comma-separated algorithms from {de,clu_de}");
    cmd.add_option("--runs", flags.runs, "independent runs per cell (default 25)");
    cmd.add_option("--seed", flags.seed, "root seed (default 1)");
    cmd.add_option("--budget-multiplier", flags.budget_multiplier,
                   "evaluation budget per dimension (default 3000)");
    cmd.add_option("--out", flags.out, "output directory");
    cmd.add_option("--transforms", flags.transforms,
                   "'synthetic' (default) or a directory of <F>_D<dim>.txt files");
    cmd.add_option("--jobs", flags.jobs, "worker threads (default: hardware)");
    cmd.add_option("--np", flags.np, "population size (default 50)");
    cmd.add_option("--f", flags.f, "scaling factor (default 0.5)");
    cmd.add_option("--cr", flags.cr, "crossover rate (default 0.9)");
    cmd.add_option("--m", flags.m, "new solutions per generation (default 10)");
}

clude::ExperimentPlan build_plan(const PlanFlags& flags) {
    clude::ExperimentPlan plan;
    if (!flags.config_file.empty())
        plan = clude::load_plan_file(flags.config_file);
    // Flags override file values.
    const auto apply = [&plan](const std::string& key, const std::string& value) {
        if (!value.empty())
            clude::apply_plan_key(plan, key, value);
    };
    apply("functions", flags.functions);
    apply("dims", flags.dims);
    apply("algos", flags.algos);
    apply("runs", flags.runs);
    apply("seed", flags.seed);
    apply("budget_multiplier", flags.budget_multiplier);
    apply("out", flags.out);
    apply("transforms", flags.transforms);
    apply("jobs", flags.jobs);
    apply("np", flags.np);
    apply("f", flags.f);
    apply("cr", flags.cr);
    apply("m", flags.m);
    return plan;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Differential evolution experiment harness with a clustering-based variant"};
    app.require_subcommand(1);

    PlanFlags run_flags;
    CLI::App* run_cmd = app.add_subcommand("run", "execute an experiment plan");
    add_plan_flags(*run_cmd, run_flags);

    std::string compare_dir;
    CLI::App* compare_cmd =
        app.add_subcommand("compare", "recompute verdicts.csv from an existing runs.csv");
    compare_cmd->add_option("--out", compare_dir, "directory holding runs.csv")->required();

    CLI::App* list_cmd = app.add_subcommand("list-functions", "print the built-in functions");

    std::string gen_dims = "10,30,50,100";
    std::string gen_seed = "1";
    std::string gen_out;
    CLI::App* gen_cmd =
        app.add_subcommand("gen-transforms", "materialize synthetic transform files");
    gen_cmd->add_option("--dims", gen_dims, "comma-separated dimensions (default 10,30,50,100)");
    gen_cmd->add_option("--seed", gen_seed, "root seed (default 1)");
    gen_cmd->add_option("--out", gen_out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*run_cmd) {
            clude::run_experiment(build_plan(run_flags));
        } else if (*compare_cmd) {
            clude::recompute_verdicts(compare_dir);
        } else if (*list_cmd) {
            std::printf("%-5s %-6s %s\n", "id", "bias", "name");
            for (const auto& info : clude::builtin_functions())
                std::printf("%-5s %-6.0f %s\n", info.id.c_str(), info.bias, info.name.c_str());
        } else if (*gen_cmd) {
            clude::ExperimentPlan probe; // reuse list parsing for dims
            clude::apply_plan_key(probe, "dims", gen_dims);
            clude::apply_plan_key(probe, "seed", gen_seed);
            std::error_code ec;
            std::filesystem::create_directories(gen_out, ec);
            if (ec)
                throw clude::IoError("cannot create output directory " + gen_out + ": " +
                                     ec.message());
            for (const std::size_t dim : probe.dimensions) {
                const clude::TransformSet set =
                    clude::synth_transforms(dim, clude::derive_transform_seed(probe.seed));
                const auto& functions = clude::builtin_functions();
                for (std::size_t i = 0; i < functions.size(); ++i) {
                    const auto path = std::filesystem::path(gen_out) /
                                      (functions[i].id + "_D" + std::to_string(dim) + ".txt");
                    clude::save_transform(path, set.per_function[i], dim);
                }
                std::printf("wrote %zu transforms for D=%zu into %s\n", functions.size(), dim,
                            gen_out.c_str());
            }
        }
    } catch (const clude::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const clude::LoadError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const clude::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}
