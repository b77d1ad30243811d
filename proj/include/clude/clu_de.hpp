#pragma once

#include <span>
#include <vector>

#include "clude/clustering.hpp"
#include "clude/core.hpp"

namespace clude {

/// Clustering-based mutation: for j = 1..M draw two distinct population
/// indices i1 != i2 (the winner's own slot is not excluded), form
/// repair(winner + F * (x_{i1} - x_{i2})), and evaluate it. No crossover is
/// applied to these offspring. Consumes exactly M evaluations.
std::vector<Individual> clustering_mutation(const Individual& winner, const Population& pop,
                                            double scaling_factor, std::size_t num_new,
                                            const Bounds& bounds, const Objective& f,
                                            RngStream& rng, EvalCounter& counter,
                                            std::string_view objective_name = "objective");

/// GPBA population update: draw M distinct slots uniformly as the
/// replacement set B, pool the M offspring with the M incumbents at B, keep
/// the best M of the 2M candidates, and write them back into the B slots
/// (ascending slot order, best candidate first). Ties on value prefer
/// offspring over incumbents, then the lower index within each group. All
/// other slots are untouched; the population size never changes.
void gpba_update(Population& pop, std::vector<Individual> offspring, std::size_t num_new,
                 RngStream& rng);

/// Full clustering-DE loop: initialize and evaluate (NFE = N_P), then until
/// the budget is spent: one DE sweep, k-means over the population with a
/// random k, winner-cluster and winner selection, clustering-based mutation
/// of M offspring, GPBA update. Each loop iteration costs N_P + M
/// evaluations, all of which are counted against the budget. The budget
/// check runs before each iteration, so the final one may overshoot nfe_max
/// by at most N_P + M - 1.
RunResult run_clu_de(const Objective& f, const AlgorithmConfig& config,
                     std::string_view objective_name = "objective");

} // namespace clude
