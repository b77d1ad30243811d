#include "clude/de.hpp"

#include <cassert>

namespace clude {

std::vector<double> mutant_vector(std::span<const double> base, std::span<const double> plus,
                                  std::span<const double> minus, double scaling_factor) {
    assert(base.size() == plus.size() && base.size() == minus.size());
    std::vector<double> v(base.size());
    for (std::size_t j = 0; j < base.size(); ++j)
        v[j] = base[j] + scaling_factor * (plus[j] - minus[j]);
    return v;
}

std::vector<double> mutate_rand1(const Population& pop, std::size_t target_index,
                                 double scaling_factor, RngStream& rng) {
    if (pop.size() < 4)
        throw ConfigError("mutate_rand1: needs a population of at least 4");
    const auto r = rng.distinct_indices(3, pop.size(), target_index);
    return mutant_vector(pop.members[r[0]].position, pop.members[r[1]].position,
                         pop.members[r[2]].position, scaling_factor);
}

std::vector<double> binomial_crossover(std::span<const double> parent,
                                       std::span<const double> mutant, double crossover_rate,
                                       RngStream& rng) {
    assert(parent.size() == mutant.size());
    const std::size_t dim = parent.size();
    const std::size_t j_rand = rng.index(dim);
    std::vector<double> trial(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        const bool from_mutant = rng.uniform() <= crossover_rate || j == j_rand;
        trial[j] = from_mutant ? mutant[j] : parent[j];
    }
    return trial;
}

const Individual& select(const Individual& parent, const Individual& trial) {
    return trial.objective() < parent.objective() ? trial : parent;
}

void de_generation(Population& pop, const Objective& f, const AlgorithmConfig& config,
                   RngStream& rng, EvalCounter& counter, std::string_view objective_name) {
    for (std::size_t i = 0; i < pop.size(); ++i) {
        std::vector<double> mutant =
            repair(mutate_rand1(pop, i, config.scaling_factor, rng), config.bounds);
        Individual trial;
        trial.position =
            binomial_crossover(pop.members[i].position, mutant, config.crossover_rate, rng);
        evaluate_and_count(f, trial, counter, objective_name);
        if (trial.objective() < pop.members[i].objective())
            pop.members[i] = std::move(trial);
    }
    pop.generation += 1;
}

RunResult run_de(const Objective& f, const AlgorithmConfig& config,
                 std::string_view objective_name) {
    RngStream rng(config.seed);
    EvalCounter counter;
    Population pop = initialize_population(config, rng);
    for (Individual& ind : pop.members)
        evaluate_and_count(f, ind, counter, objective_name);

    RunTrace trace;
    trace.push_back({counter.count, pop.best().objective()});
    while (counter.count < config.nfe_max) {
        de_generation(pop, f, config, rng, counter, objective_name);
        trace.push_back({counter.count, pop.best().objective()});
    }
    return RunResult{pop.best(), std::move(trace), counter};
}

} // namespace clude
