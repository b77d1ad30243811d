#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "clude/errors.hpp"
#include "clude/rng.hpp"

namespace clude {

/// Objective function over a position vector. Lower is better; callers
/// minimize. Must be pure and reentrant (runs may evaluate concurrently).
using Objective = std::function<double(std::span<const double>)>;

/// A candidate solution: position in R^D plus its cached objective value.
/// The value is an explicit "not yet evaluated" optional so that reading a
/// stale value is a detectable bug rather than a silent one.
struct Individual {
    std::vector<double> position;
    std::optional<double> value;

    bool evaluated() const { return value.has_value(); }

    /// Cached objective value. Throws StateError when not yet evaluated.
    double objective() const {
        if (!value)
            throw StateError("individual has no objective value yet");
        return *value;
    }
};

/// Box constraints. lower[j] < upper[j] for every coordinate.
struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;

    std::size_t dimension() const { return lower.size(); }
    void validate() const;

    /// [-half_width, +half_width]^dim.
    static Bounds symmetric(std::size_t dim, double half_width);
};

/// All parameters of a single optimization run.
struct AlgorithmConfig {
    std::size_t population_size = 50; // N_P
    double scaling_factor = 0.5;      // F
    double crossover_rate = 0.9;      // CR
    std::size_t num_new_solutions = 10; // M, offspring per clustering-mutation round
    std::uint64_t nfe_max = 0;        // evaluation budget
    std::size_t dimension = 0;        // D
    std::uint64_t seed = 0;
    Bounds bounds;

    void validate() const; // throws ConfigError on any violated invariant
};

/// Counts true objective evaluations; the budget currency of a run.
struct EvalCounter {
    std::uint64_t count = 0;
};

/// Fixed-size ordered population with a generation counter.
struct Population {
    std::vector<Individual> members;
    std::uint64_t generation = 0;

    std::size_t size() const { return members.size(); }

    /// Index of the best (lowest objective) member; ties keep the lowest
    /// index. Throws StateError if any member is unevaluated.
    std::size_t best_index() const;
    const Individual& best() const { return members[best_index()]; }
};

/// One convergence sample: evaluations spent so far and best value found.
struct TracePoint {
    std::uint64_t nfe = 0;
    double best = 0.0;
};

/// Best-so-far trace, one point per generation. nfe strictly increasing,
/// best non-increasing.
using RunTrace = std::vector<TracePoint>;

/// Outcome of one run: final best individual, convergence trace, and the
/// total evaluation count actually spent.
struct RunResult {
    Individual best;
    RunTrace trace;
    EvalCounter evals;
};

/// N_P individuals drawn coordinate-wise uniformly from [lower_j, upper_j);
/// values unset, generation 0. Rejects invalid configs.
Population initialize_population(const AlgorithmConfig& config, RngStream& rng);

/// Clamps every coordinate into [lower_j, upper_j]; in-bounds coordinates
/// are returned unchanged.
std::vector<double> repair(std::vector<double> position, const Bounds& bounds);

/// Evaluates `ind` with `f`, stores the value, and increments the counter by
/// exactly one. A non-finite result raises EvaluationError naming the
/// function and the offending input.
void evaluate_and_count(const Objective& f, Individual& ind, EvalCounter& counter,
                        std::string_view objective_name = "objective");

} // namespace clude
