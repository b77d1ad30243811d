#include "clude/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "clude/benchmarks.hpp"
#include "clude/clu_de.hpp"
#include "clude/de.hpp"
#include "clude/errors.hpp"

namespace clude {

namespace {

const std::set<std::size_t> kAllowedDims = {10, 30, 50, 100};

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos)
        return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const std::uint64_t v = std::stoull(value, &pos);
        if (pos != value.size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("plan: cannot parse '" + value + "' as an integer for key '" + key +
                          "'");
    }
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("plan: cannot parse '" + value + "' as a number for key '" + key + "'");
    }
}

} // namespace

void ExperimentPlan::validate() const {
    if (functions.empty())
        throw ConfigError("plan: no functions selected");
    if (dimensions.empty())
        throw ConfigError("plan: no dimensions selected");
    if (algorithms.empty())
        throw ConfigError("plan: no algorithms selected");
    for (const std::string& fid : functions)
        function_by_id(fid); // throws for unknown ids
    for (const std::size_t d : dimensions)
        if (!kAllowedDims.contains(d))
            throw ConfigError("plan: dimension " + std::to_string(d) +
                              " is not one of {10, 30, 50, 100}");
    for (const std::string& algo : algorithms)
        if (algo != "de" && algo != "clu_de")
            throw ConfigError("plan: unknown algorithm '" + algo + "' (expected de or clu_de)");
    if (runs < 2)
        throw ConfigError("plan: needs at least 2 runs per cell");
    if (budget_multiplier == 0)
        throw ConfigError("plan: budget multiplier must be positive");
    if (out_dir.empty())
        throw ConfigError("plan: no output directory");
    if (transforms.empty())
        throw ConfigError("plan: transform source must be 'synthetic' or a directory");
}

void apply_plan_key(ExperimentPlan& plan, const std::string& key, const std::string& value) {
    if (key == "functions") {
        plan.functions = split_list(value);
    } else if (key == "dims") {
        plan.dimensions.clear();
        for (const std::string& d : split_list(value))
            plan.dimensions.push_back(parse_u64(key, d));
    } else if (key == "algos") {
        plan.algorithms = split_list(value);
    } else if (key == "runs") {
        plan.runs = parse_u64(key, value);
    } else if (key == "seed") {
        plan.seed = parse_u64(key, value);
    } else if (key == "budget_multiplier") {
        plan.budget_multiplier = parse_u64(key, value);
    } else if (key == "transforms") {
        plan.transforms = value;
    } else if (key == "out") {
        plan.out_dir = value;
    } else if (key == "jobs") {
        plan.jobs = parse_u64(key, value);
    } else if (key == "np") {
        plan.population_size = parse_u64(key, value);
    } else if (key == "f") {
        plan.scaling_factor = parse_real(key, value);
    } else if (key == "cr") {
        plan.crossover_rate = parse_real(key, value);
    } else if (key == "m") {
        plan.num_new_solutions = parse_u64(key, value);
    } else {
        throw ConfigError("plan: unknown key '" + key + "'");
    }
}

ExperimentPlan load_plan_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open plan file: " + path.string());
    ExperimentPlan plan;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                              ": expected 'key = value'");
        apply_plan_key(plan, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return plan;
}

std::uint64_t derive_run_seed(std::uint64_t root_seed, const std::string& function_id,
                              std::size_t dim, const std::string& algorithm, std::size_t run) {
    std::uint64_t s = mix_seed(root_seed, "run");
    s = mix_seed(s, function_id);
    s = mix_seed(s, static_cast<std::uint64_t>(dim));
    s = mix_seed(s, algorithm);
    s = mix_seed(s, static_cast<std::uint64_t>(run));
    return s;
}

std::uint64_t derive_transform_seed(std::uint64_t root_seed) {
    return mix_seed(root_seed, "transforms");
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

struct CellSpec {
    std::string function_id;
    std::size_t dim;
    std::string algorithm;
};

// Composed instance for one (function, dimension), shared read-only by all
// cells that evaluate it. Synthetic sets are keyed by the root seed only,
// so every algorithm and run of a cell faces the same instance.
BenchmarkFunction make_instance(const ExperimentPlan& plan, const TransformSet* synth,
                                const std::string& fid, std::size_t dim) {
    const FunctionInfo& info = function_by_id(fid);
    Transform transform;
    if (synth != nullptr) {
        std::size_t index = 0;
        for (std::size_t i = 0; i < builtin_functions().size(); ++i)
            if (builtin_functions()[i].id == fid)
                index = i;
        transform = synth->per_function[index];
    } else {
        const std::filesystem::path file = std::filesystem::path(plan.transforms) /
                                           (fid + "_D" + std::to_string(dim) + ".txt");
        transform = load_transform(file, dim);
    }
    return BenchmarkFunction(info, dim, std::move(transform));
}

CellResult run_cell(const ExperimentPlan& plan, const CellSpec& spec,
                    const BenchmarkFunction& instance) {
    CellResult result;
    result.function_id = spec.function_id;
    result.dim = spec.dim;
    result.algorithm = spec.algorithm;

    AlgorithmConfig config;
    config.population_size = plan.population_size;
    config.scaling_factor = plan.scaling_factor;
    config.crossover_rate = plan.crossover_rate;
    config.num_new_solutions = plan.num_new_solutions;
    config.dimension = spec.dim;
    config.nfe_max = plan.budget_multiplier * spec.dim;
    config.bounds = Bounds::symmetric(spec.dim, 100.0);

    const Objective f = [&instance](std::span<const double> x) { return instance(x); };
    const std::string label = spec.function_id + " (D=" + std::to_string(spec.dim) + ")";

    for (std::size_t run = 0; run < plan.runs; ++run) {
        config.seed = derive_run_seed(plan.seed, spec.function_id, spec.dim, spec.algorithm, run);
        RunResult r = spec.algorithm == "de" ? run_de(f, config, label)
                                             : run_clu_de(f, config, label);
        result.finals.push_back(r.best.objective());
        result.seeds.push_back(config.seed);
        result.traces.push_back(std::move(r.trace));
    }
    return result;
}

} // namespace

ExperimentResult execute_plan(const ExperimentPlan& plan) {
    plan.validate();

    std::vector<CellSpec> specs;
    for (const std::string& fid : plan.functions)
        for (const std::size_t dim : plan.dimensions)
            for (const std::string& algo : plan.algorithms)
                specs.push_back({fid, dim, algo});

    // Instances are built up front and shared; they are immutable after
    // construction.
    std::map<std::size_t, TransformSet> synth_sets;
    if (plan.transforms == "synthetic")
        for (const std::size_t dim : plan.dimensions)
            synth_sets.emplace(dim, synth_transforms(dim, derive_transform_seed(plan.seed)));
    std::map<std::pair<std::string, std::size_t>, BenchmarkFunction> instances;
    for (const std::string& fid : plan.functions) {
        for (const std::size_t dim : plan.dimensions) {
            const auto set = synth_sets.find(dim);
            instances.emplace(std::make_pair(fid, dim),
                              make_instance(plan, set != synth_sets.end() ? &set->second : nullptr,
                                            fid, dim));
        }
    }

    ExperimentResult result;
    result.cells.resize(specs.size());

    std::size_t jobs = plan.jobs != 0 ? plan.jobs : std::thread::hardware_concurrency();
    jobs = std::max<std::size_t>(1, std::min(jobs, specs.size()));

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    const auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= specs.size() || failed.load())
                return;
            try {
                const auto& instance =
                    instances.at(std::make_pair(specs[i].function_id, specs[i].dim));
                result.cells[i] = run_cell(plan, specs[i], instance);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
                failed.store(true);
            }
        }
    };

    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (std::size_t t = 0; t < jobs; ++t)
            pool.emplace_back(worker);
        for (std::thread& t : pool)
            t.join();
    }
    if (first_error)
        std::rethrow_exception(first_error);
    return result;
}

ConvergenceTable align_convergence(const std::vector<std::string>& algorithms,
                                   const std::vector<std::vector<RunTrace>>& traces_per_algo) {
    assert(algorithms.size() == traces_per_algo.size());
    if (algorithms.empty() || traces_per_algo.empty())
        throw ConfigError("align_convergence: no traces");
    for (const auto& runs : traces_per_algo)
        if (runs.empty() || runs.front().empty())
            throw ConfigError("align_convergence: empty trace set");

    // The checkpoint grid is the per-generation grid of the algorithm that
    // advances in the largest steps (fewest points); runs of one algorithm
    // share the same grid by construction.
    std::size_t grid_algo = 0;
    for (std::size_t a = 1; a < algorithms.size(); ++a)
        if (traces_per_algo[a].front().size() < traces_per_algo[grid_algo].front().size())
            grid_algo = a;

    ConvergenceTable table;
    table.algorithms = algorithms;
    for (const TracePoint& p : traces_per_algo[grid_algo].front())
        table.checkpoints.push_back(p.nfe);

    for (const auto& runs : traces_per_algo) {
        std::vector<double> means;
        means.reserve(table.checkpoints.size());
        for (const std::uint64_t checkpoint : table.checkpoints) {
            double sum = 0.0;
            for (const RunTrace& trace : runs) {
                // Last value carried forward: the latest sample at or
                // before the checkpoint.
                assert(!trace.empty() && trace.front().nfe <= checkpoint);
                double value = trace.front().best;
                for (const TracePoint& p : trace) {
                    if (p.nfe > checkpoint)
                        break;
                    value = p.best;
                }
                sum += value;
            }
            means.push_back(sum / static_cast<double>(runs.size()));
        }
        table.mean_best.push_back(std::move(means));
    }
    return table;
}

void write_convergence_csv(std::ostream& out, const ConvergenceTable& table) {
    out << "nfe";
    for (const std::string& algo : table.algorithms)
        out << "," << algo << "_mean_best";
    out << "\n";
    for (std::size_t row = 0; row < table.checkpoints.size(); ++row) {
        out << table.checkpoints[row];
        for (std::size_t a = 0; a < table.algorithms.size(); ++a)
            out << "," << format_double(table.mean_best[a][row]);
        out << "\n";
    }
}

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write output file: " + path.string());
    return out;
}

void write_verdicts_csv(const std::filesystem::path& dir,
                        const std::vector<std::string>& functions,
                        const std::vector<std::size_t>& dims,
                        const std::function<const std::vector<double>*(
                            const std::string&, std::size_t, const std::string&)>& finals_of) {
    std::ofstream out = open_output(dir / "verdicts.csv");
    out << "function,dim,verdict,W,threshold_or_p\n";
    for (const std::string& fid : functions) {
        for (const std::size_t dim : dims) {
            const std::vector<double>* de = finals_of(fid, dim, "de");
            const std::vector<double>* clu = finals_of(fid, dim, "clu_de");
            if (de == nullptr || clu == nullptr)
                continue; // verdicts need both algorithms
            const WilcoxonResult w = wilcoxon_signed_rank(*de, *clu);
            out << fid << "," << dim << "," << verdict_symbol(w.verdict) << ","
                << format_double(w.w_statistic) << "," << format_double(w.threshold_or_p)
                << "\n";
        }
    }
    if (!out.good())
        throw IoError("failed writing verdicts.csv");
}

} // namespace

void run_experiment(const ExperimentPlan& plan) {
    plan.validate();
    std::error_code ec;
    std::filesystem::create_directories(plan.out_dir, ec);
    if (ec)
        throw IoError("cannot create output directory " + plan.out_dir.string() + ": " +
                      ec.message());

    const ExperimentResult result = execute_plan(plan);

    const auto find_cell = [&](const std::string& fid, std::size_t dim,
                               const std::string& algo) -> const CellResult* {
        for (const CellResult& cell : result.cells)
            if (cell.function_id == fid && cell.dim == dim && cell.algorithm == algo)
                return &cell;
        return nullptr;
    };

    {
        std::ofstream out = open_output(plan.out_dir / "summary.csv");
        out << "function,dim,algorithm,runs,mean,stddev\n";
        for (const CellResult& cell : result.cells) {
            const Summary s = summarize(cell.finals);
            out << cell.function_id << "," << cell.dim << "," << cell.algorithm << ","
                << cell.finals.size() << "," << format_double(s.mean) << ","
                << format_double(s.stddev) << "\n";
        }
        if (!out.good())
            throw IoError("failed writing summary.csv");
    }

    {
        std::ofstream out = open_output(plan.out_dir / "runs.csv");
        out << "function,dim,algorithm,run,seed,final\n";
        for (const CellResult& cell : result.cells)
            for (std::size_t r = 0; r < cell.finals.size(); ++r)
                out << cell.function_id << "," << cell.dim << "," << cell.algorithm << "," << r
                    << "," << cell.seeds[r] << "," << format_double(cell.finals[r]) << "\n";
        if (!out.good())
            throw IoError("failed writing runs.csv");
    }

    write_verdicts_csv(plan.out_dir, plan.functions, plan.dimensions,
                       [&](const std::string& fid, std::size_t dim,
                           const std::string& algo) -> const std::vector<double>* {
                           const CellResult* cell = find_cell(fid, dim, algo);
                           return cell ? &cell->finals : nullptr;
                       });

    for (const std::string& fid : plan.functions) {
        for (const std::size_t dim : plan.dimensions) {
            std::vector<std::string> algos;
            std::vector<std::vector<RunTrace>> traces;
            for (const std::string& algo : plan.algorithms) {
                if (const CellResult* cell = find_cell(fid, dim, algo)) {
                    algos.push_back(algo);
                    traces.push_back(cell->traces);
                }
            }
            if (algos.empty())
                continue;
            const ConvergenceTable table = align_convergence(algos, traces);
            std::ofstream out =
                open_output(plan.out_dir / ("trace_" + fid + "_D" + std::to_string(dim) + ".csv"));
            write_convergence_csv(out, table);
            if (!out.good())
                throw IoError("failed writing trace CSV for " + fid);
        }
    }
}

void recompute_verdicts(const std::filesystem::path& dir) {
    const std::filesystem::path runs_path = dir / "runs.csv";
    std::ifstream in(runs_path);
    if (!in)
        throw IoError("cannot open " + runs_path.string() + " (produced by a previous run)");

    struct Key {
        std::string fid;
        std::size_t dim;
        std::string algo;
        bool operator<(const Key& o) const {
            return std::tie(fid, dim, algo) < std::tie(o.fid, o.dim, o.algo);
        }
    };
    std::map<Key, std::vector<double>> finals;
    std::vector<std::string> function_order;
    std::vector<std::size_t> dim_order;

    std::string line;
    if (!std::getline(in, line) || line != "function,dim,algorithm,run,seed,final")
        throw LoadError(runs_path.string() + ": unexpected header");
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty())
            continue;
        const std::vector<std::string> fields = split_list(line);
        if (fields.size() != 6)
            throw LoadError(runs_path.string() + ":" + std::to_string(lineno) +
                            ": expected 6 fields");
        const Key key{fields[0], static_cast<std::size_t>(parse_u64("dim", fields[1])),
                      fields[2]};
        finals[key].push_back(parse_real("final", fields[5]));
        if (std::find(function_order.begin(), function_order.end(), key.fid) ==
            function_order.end())
            function_order.push_back(key.fid);
        if (std::find(dim_order.begin(), dim_order.end(), key.dim) == dim_order.end())
            dim_order.push_back(key.dim);
    }

    write_verdicts_csv(dir, function_order, dim_order,
                       [&](const std::string& fid, std::size_t dim,
                           const std::string& algo) -> const std::vector<double>* {
                           const auto it = finals.find(Key{fid, dim, algo});
                           return it != finals.end() ? &it->second : nullptr;
                       });
}

} // namespace clude
