#include "clude/clu_de.hpp"

#include <algorithm>
#include <cassert>

#include "clude/de.hpp"

namespace clude {

std::vector<Individual> clustering_mutation(const Individual& winner, const Population& pop,
                                            double scaling_factor, std::size_t num_new,
                                            const Bounds& bounds, const Objective& f,
                                            RngStream& rng, EvalCounter& counter,
                                            std::string_view objective_name) {
    if (num_new < 1)
        throw ConfigError("clustering_mutation: M must be positive");
    if (pop.size() < 2)
        throw ConfigError("clustering_mutation: needs at least two population members");
    std::vector<Individual> offspring;
    offspring.reserve(num_new);
    for (std::size_t j = 0; j < num_new; ++j) {
        const auto r = rng.distinct_indices(2, pop.size());
        Individual child;
        child.position = repair(mutant_vector(winner.position, pop.members[r[0]].position,
                                              pop.members[r[1]].position, scaling_factor),
                                bounds);
        evaluate_and_count(f, child, counter, objective_name);
        offspring.push_back(std::move(child));
    }
    return offspring;
}

void gpba_update(Population& pop, std::vector<Individual> offspring, std::size_t num_new,
                 RngStream& rng) {
    assert(offspring.size() == num_new);
    if (num_new > pop.size())
        throw ConfigError("gpba_update: M must not exceed the population size");

    std::vector<std::size_t> replaced = rng.distinct_indices(num_new, pop.size());
    std::sort(replaced.begin(), replaced.end());

    // Pool the M offspring with the M incumbents drawn as the replacement
    // set; keep the best M. Ties on value prefer offspring, then the lower
    // index within each group.
    struct Candidate {
        double value;
        int incumbent; // 0 = offspring, 1 = incumbent
        std::size_t ord;
    };
    std::vector<Candidate> candidates;
    candidates.reserve(2 * num_new);
    for (std::size_t j = 0; j < num_new; ++j)
        candidates.push_back({offspring[j].objective(), 0, j});
    for (std::size_t j = 0; j < num_new; ++j)
        candidates.push_back({pop.members[replaced[j]].objective(), 1, j});
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.value != b.value)
            return a.value < b.value;
        if (a.incumbent != b.incumbent)
            return a.incumbent < b.incumbent;
        return a.ord < b.ord;
    });

    // Survivors fill the replaced slots in ascending slot order; incumbents
    // are taken by copy first since writes reuse the same slots.
    std::vector<Individual> survivors;
    survivors.reserve(num_new);
    for (std::size_t s = 0; s < num_new; ++s) {
        const Candidate& c = candidates[s];
        survivors.push_back(c.incumbent ? pop.members[replaced[c.ord]]
                                        : std::move(offspring[c.ord]));
    }
    for (std::size_t s = 0; s < num_new; ++s)
        pop.members[replaced[s]] = std::move(survivors[s]);
}

RunResult run_clu_de(const Objective& f, const AlgorithmConfig& config,
                     std::string_view objective_name) {
    RngStream rng(config.seed);
    EvalCounter counter;
    Population pop = initialize_population(config, rng);
    for (Individual& ind : pop.members)
        evaluate_and_count(f, ind, counter, objective_name);

    RunTrace trace;
    trace.push_back({counter.count, pop.best().objective()});

    std::vector<std::vector<double>> positions(pop.size());
    std::vector<double> values(pop.size());
    while (counter.count < config.nfe_max) {
        de_generation(pop, f, config, rng, counter, objective_name);

        for (std::size_t i = 0; i < pop.size(); ++i) {
            positions[i] = pop.members[i].position;
            values[i] = pop.members[i].objective();
        }
        const std::size_t k = pick_k(pop.size(), rng);
        const Clustering clu = kmeans(positions, k, rng);
        const std::size_t winner_idx = winner_cluster(clu, values);
        const Individual winner = cluster_best(clu, pop, winner_idx);

        std::vector<Individual> offspring =
            clustering_mutation(winner, pop, config.scaling_factor, config.num_new_solutions,
                                config.bounds, f, rng, counter, objective_name);
        gpba_update(pop, std::move(offspring), config.num_new_solutions, rng);

        trace.push_back({counter.count, pop.best().objective()});
    }
    return RunResult{pop.best(), std::move(trace), counter};
}

} // namespace clude
