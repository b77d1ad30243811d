#pragma once

#include <span>
#include <vector>

#include "clude/core.hpp"

namespace clude {

/// base + F * (plus - minus), the arithmetic common to both mutation
/// operators. All spans must have equal length.
std::vector<double> mutant_vector(std::span<const double> base, std::span<const double> plus,
                                  std::span<const double> minus, double scaling_factor);

/// rand/1 mutation: x_{r1} + F * (x_{r2} - x_{r3}) with r1, r2, r3 mutually
/// distinct and distinct from target_index. Requires N_P >= 4.
/// Draw protocol: rng.distinct_indices(3, N_P, exclude = target_index).
std::vector<double> mutate_rand1(const Population& pop, std::size_t target_index,
                                 double scaling_factor, RngStream& rng);

/// Binomial crossover. Draw protocol: j_rand = rng.index(D), then one
/// uniform() per coordinate in ascending order; coordinate j takes the
/// mutant's value iff rand_j <= CR or j == j_rand. At least one mutant
/// coordinate always survives.
std::vector<double> binomial_crossover(std::span<const double> parent,
                                       std::span<const double> mutant, double crossover_rate,
                                       RngStream& rng);

/// Greedy selection with strict improvement: trial survives iff
/// f(trial) < f(parent). Ties keep the parent.
const Individual& select(const Individual& parent, const Individual& trial);

/// One full DE/rand/1/bin sweep: mutate -> repair -> crossover -> evaluate ->
/// select for each target in index order, writing survivors back into the
/// population immediately (steady-state: later targets may draw already
/// updated members as parents). Consumes exactly N_P evaluations and bumps
/// the generation counter.
void de_generation(Population& pop, const Objective& f, const AlgorithmConfig& config,
                   RngStream& rng, EvalCounter& counter,
                   std::string_view objective_name = "objective");

/// Standard DE baseline: initialize, evaluate, then de_generation sweeps
/// until the budget is exhausted. The budget check runs before each sweep,
/// so the final sweep may overshoot nfe_max by at most N_P - 1.
RunResult run_de(const Objective& f, const AlgorithmConfig& config,
                 std::string_view objective_name = "objective");

} // namespace clude
