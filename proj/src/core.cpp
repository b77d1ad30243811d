#include "clude/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace clude {

void Bounds::validate() const {
    if (lower.size() != upper.size())
        throw ConfigError("bounds: lower and upper differ in length");
    if (lower.empty())
        throw ConfigError("bounds: empty");
    for (std::size_t j = 0; j < lower.size(); ++j) {
        if (!(lower[j] < upper[j]))
            throw ConfigError("bounds: lower[" + std::to_string(j) +
                              "] must be strictly below upper[" + std::to_string(j) + "]");
    }
}

Bounds Bounds::symmetric(std::size_t dim, double half_width) {
    return Bounds{std::vector<double>(dim, -half_width), std::vector<double>(dim, half_width)};
}

void AlgorithmConfig::validate() const {
    if (population_size < 4)
        throw ConfigError("config: population size must be at least 4 (rand/1 needs three "
                          "distinct non-target parents)");
    if (num_new_solutions < 1)
        throw ConfigError("config: number of new solutions M must be positive");
    if (num_new_solutions > population_size)
        throw ConfigError("config: M must not exceed the population size");
    if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0))
        throw ConfigError("config: crossover rate must lie in [0, 1]");
    if (!std::isfinite(scaling_factor))
        throw ConfigError("config: scaling factor must be finite");
    if (nfe_max == 0)
        throw ConfigError("config: evaluation budget must be positive");
    if (dimension == 0)
        throw ConfigError("config: dimension must be positive");
    bounds.validate();
    if (bounds.dimension() != dimension)
        throw ConfigError("config: bounds dimension does not match problem dimension");
}

std::size_t Population::best_index() const {
    if (members.empty())
        throw StateError("population is empty");
    std::size_t best = 0;
    double best_value = members[0].objective();
    for (std::size_t i = 1; i < members.size(); ++i) {
        const double v = members[i].objective();
        if (v < best_value) {
            best_value = v;
            best = i;
        }
    }
    return best;
}

Population initialize_population(const AlgorithmConfig& config, RngStream& rng) {
    config.validate();
    Population pop;
    pop.generation = 0;
    pop.members.resize(config.population_size);
    for (Individual& ind : pop.members) {
        ind.position.resize(config.dimension);
        for (std::size_t j = 0; j < config.dimension; ++j)
            ind.position[j] = rng.uniform(config.bounds.lower[j], config.bounds.upper[j]);
    }
    return pop;
}

std::vector<double> repair(std::vector<double> position, const Bounds& bounds) {
    for (std::size_t j = 0; j < position.size(); ++j)
        position[j] = std::clamp(position[j], bounds.lower[j], bounds.upper[j]);
    return position;
}

void evaluate_and_count(const Objective& f, Individual& ind, EvalCounter& counter,
                        std::string_view objective_name) {
    const double v = f(ind.position);
    counter.count += 1;
    if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << objective_name << " returned a non-finite value (" << v << ") at x = [";
        const std::size_t shown = std::min<std::size_t>(ind.position.size(), 8);
        for (std::size_t j = 0; j < shown; ++j)
            msg << (j ? ", " : "") << ind.position[j];
        if (shown < ind.position.size())
            msg << ", ...";
        msg << "]";
        throw EvaluationError(msg.str());
    }
    ind.value = v;
}

} // namespace clude
