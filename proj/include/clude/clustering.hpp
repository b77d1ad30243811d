#pragma once

#include <span>
#include <vector>

#include "clude/core.hpp"

namespace clude {

/// Result of Lloyd's algorithm over a point set.
struct Clustering {
    std::vector<std::size_t> assignments;     // per point, in [0, k)
    std::vector<std::vector<double>> centers; // k centers of length D
    std::size_t k = 0;
    std::size_t iterations = 0;       // Lloyd iterations executed
    std::vector<double> sse_history;  // within-cluster SSE after each iteration
};

/// Cluster count drawn uniformly from {2, ..., floor(sqrt(N_P))}.
/// Requires N_P >= 4 (otherwise the range would be empty).
std::size_t pick_k(std::size_t population_size, RngStream& rng);

/// Lloyd's k-means. Initial centers are k distinct input points chosen
/// uniformly (one rng.distinct_indices(k, n) draw). Iterates assign-by-
/// nearest-center (squared Euclidean, ties to the lowest center index) and
/// recompute-centers-as-means until assignments stabilize or max_iters is
/// reached. A cluster emptied by an assignment pass is reseeded to the point
/// farthest from its own center (among clusters that keep >= 2 members,
/// ties to the lowest point index), so every returned cluster is non-empty.
Clustering kmeans(const std::vector<std::vector<double>>& points, std::size_t k, RngStream& rng,
                  std::size_t max_iters = 100);

/// Within-cluster sum of squared distances of `points` to their assigned
/// centers.
double clustering_sse(const Clustering& clu, const std::vector<std::vector<double>>& points);

/// Cluster with the lowest mean objective value; ties break to the lowest
/// cluster index. `values[i]` is the objective value of point i.
std::size_t winner_cluster(const Clustering& clu, std::span<const double> values);

/// Best member of the winner cluster (lowest value, ties to the lowest
/// population index). Not necessarily the best member of the population.
const Individual& cluster_best(const Clustering& clu, const Population& pop, std::size_t winner);

} // namespace clude
