#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "clude/core.hpp"
#include "clude/stats.hpp"

namespace clude {

/// Batch experiment description: the cross product of functions, dimensions
/// and algorithms, each cell run `runs` times with independently derived
/// seeds.
struct ExperimentPlan {
    // Defaults reproduce the headline comparison: every built-in function at
    // D = 30, both algorithms, 25 runs.
    std::vector<std::string> functions = {"F1", "F2", "F3", "F4", "F5",
                                          "F6", "F7", "F8", "F9", "F10"};
    std::vector<std::size_t> dimensions = {30};  // subset of {10, 30, 50, 100}
    std::vector<std::string> algorithms = {"de", "clu_de"};
    std::size_t runs = 25;
    std::uint64_t seed = 1;                // root seed
    std::uint64_t budget_multiplier = 3000; // nfe_max = multiplier * D
    std::string transforms = "synthetic";  // "synthetic" or a data directory
    std::filesystem::path out_dir;
    std::size_t jobs = 0;                  // worker threads; 0 = hardware default

    // Run parameters (reference-protocol defaults; overridable).
    std::size_t population_size = 50;
    double scaling_factor = 0.5;
    double crossover_rate = 0.9;
    std::size_t num_new_solutions = 10;

    void validate() const; // throws ConfigError
};

/// Parses a plain-text plan file: one `key = value` per line, `#` comments,
/// comma-separated lists. Unknown keys are rejected. Keys mirror the CLI
/// flags: functions, dims, algos, runs, seed, budget_multiplier, transforms,
/// out, jobs, np, f, cr, m.
ExperimentPlan load_plan_file(const std::filesystem::path& path);

/// Applies one key=value assignment to a plan (shared by the file parser
/// and CLI flag handling).
void apply_plan_key(ExperimentPlan& plan, const std::string& key, const std::string& value);

/// Child seed for one run. Pure function of its arguments: no cell's stream
/// depends on which other cells are scheduled or in what order.
std::uint64_t derive_run_seed(std::uint64_t root_seed, const std::string& function_id,
                              std::size_t dim, const std::string& algorithm, std::size_t run);

/// Seed for the synthetic transform set of a run. Independent of function,
/// algorithm and run index so every cell of a plan faces the same instances.
std::uint64_t derive_transform_seed(std::uint64_t root_seed);

/// Per-run outcome retained for reporting.
struct CellResult {
    std::string function_id;
    std::size_t dim = 0;
    std::string algorithm;
    std::vector<double> finals;      // one per run, run order
    std::vector<std::uint64_t> seeds;
    std::vector<RunTrace> traces;
};

/// Full experiment output, in plan order.
struct ExperimentResult {
    std::vector<CellResult> cells;
};

/// Executes the plan (cells in parallel on a bounded worker pool, runs
/// sequential within a cell) and returns all per-run results in plan order.
ExperimentResult execute_plan(const ExperimentPlan& plan);

/// Executes the plan and writes summary.csv, runs.csv, verdicts.csv and one
/// trace_<function>_D<dim>.csv per (function, dimension) into plan.out_dir.
/// Re-running the same plan reproduces byte-identical numeric content.
void run_experiment(const ExperimentPlan& plan);

/// Recomputes verdicts.csv from an existing runs.csv (written by a previous
/// `run`) in `dir`.
void recompute_verdicts(const std::filesystem::path& dir);

/// Mean best-so-far convergence table for one (function, dimension):
/// column 0 is the common nfe checkpoint grid (the per-generation grid of
/// the algorithm advancing in the largest steps), later columns are the
/// per-algorithm means over runs, aligned by last-value-carried-forward.
struct ConvergenceTable {
    std::vector<std::uint64_t> checkpoints;
    std::vector<std::string> algorithms;
    std::vector<std::vector<double>> mean_best; // [algo][checkpoint]
};
ConvergenceTable align_convergence(const std::vector<std::string>& algorithms,
                                   const std::vector<std::vector<RunTrace>>& traces_per_algo);
void write_convergence_csv(std::ostream& out, const ConvergenceTable& table);

/// Serializes a double with 17 significant digits (round-trips bit-exactly).
std::string format_double(double v);

} // namespace clude
