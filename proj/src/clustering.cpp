#include "clude/clustering.hpp"

#include <cassert>
#include <cmath>
#include <limits>

namespace clude {

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        s += d * d;
    }
    return s;
}

std::size_t isqrt(std::size_t n) {
    auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    while ((r + 1) * (r + 1) <= n)
        ++r;
    while (r * r > n)
        --r;
    return r;
}

} // namespace

std::size_t pick_k(std::size_t population_size, RngStream& rng) {
    if (population_size < 4)
        throw ConfigError("pick_k: population size must be at least 4");
    const std::size_t k_max = isqrt(population_size); // >= 2 for N_P >= 4
    return 2 + rng.index(k_max - 1);                  // uniform on {2, ..., k_max}
}

Clustering kmeans(const std::vector<std::vector<double>>& points, std::size_t k, RngStream& rng,
                  std::size_t max_iters) {
    const std::size_t n = points.size();
    if (n == 0)
        throw ConfigError("kmeans: no points");
    if (k < 1 || k > n)
        throw ConfigError("kmeans: k must lie in [1, number of points]");
    const std::size_t dim = points[0].size();

    Clustering clu;
    clu.k = k;
    clu.assignments.assign(n, 0);

    // Seed centers with k distinct input points (this draw doubles as the
    // selection step of the population update).
    clu.centers.reserve(k);
    for (const std::size_t idx : rng.distinct_indices(k, n))
        clu.centers.push_back(points[idx]);

    std::vector<std::size_t> counts(k, 0);
    std::vector<std::size_t> previous;
    for (std::size_t iter = 0; iter < max_iters; ++iter) {
        previous = clu.assignments;

        // Assign each point to its nearest center; ties keep the lowest
        // center index.
        counts.assign(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t best = 0;
            double best_dist = squared_distance(points[i], clu.centers[0]);
            for (std::size_t c = 1; c < k; ++c) {
                const double d = squared_distance(points[i], clu.centers[c]);
                if (d < best_dist) {
                    best_dist = d;
                    best = c;
                }
            }
            clu.assignments[i] = best;
            counts[best] += 1;
        }

        // Reseed any emptied cluster to the point farthest from its own
        // center, taken from a cluster that keeps at least two members.
        // Keeps k constant and is deterministic given the state.
        bool reseeded = false;
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] != 0)
                continue;
            std::size_t farthest = n;
            double far_dist = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (counts[clu.assignments[i]] < 2)
                    continue;
                const double d = squared_distance(points[i], clu.centers[clu.assignments[i]]);
                if (d > far_dist) {
                    far_dist = d;
                    farthest = i;
                }
            }
            assert(farthest < n); // guaranteed: some cluster holds >= 2 of the n >= k points
            counts[clu.assignments[farthest]] -= 1;
            clu.centers[c] = points[farthest];
            clu.assignments[farthest] = c;
            counts[c] = 1;
            reseeded = true;
        }

        // Recompute centers as member means.
        for (auto& center : clu.centers)
            center.assign(dim, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            auto& center = clu.centers[clu.assignments[i]];
            for (std::size_t j = 0; j < dim; ++j)
                center[j] += points[i][j];
        }
        for (std::size_t c = 0; c < k; ++c)
            for (std::size_t j = 0; j < dim; ++j)
                clu.centers[c][j] /= static_cast<double>(counts[c]);

        clu.iterations = iter + 1;
        clu.sse_history.push_back(clustering_sse(clu, points));

        if (!reseeded && clu.assignments == previous)
            break;
    }
    return clu;
}

double clustering_sse(const Clustering& clu, const std::vector<std::vector<double>>& points) {
    double sse = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        sse += squared_distance(points[i], clu.centers[clu.assignments[i]]);
    return sse;
}

std::size_t winner_cluster(const Clustering& clu, std::span<const double> values) {
    assert(values.size() == clu.assignments.size());
    std::vector<double> sums(clu.k, 0.0);
    std::vector<std::size_t> counts(clu.k, 0);
    for (std::size_t i = 0; i < values.size(); ++i) {
        sums[clu.assignments[i]] += values[i];
        counts[clu.assignments[i]] += 1;
    }
    std::size_t winner = clu.k;
    double best_mean = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < clu.k; ++c) {
        if (counts[c] == 0)
            throw StateError("winner_cluster: empty cluster " + std::to_string(c));
        const double mean = sums[c] / static_cast<double>(counts[c]);
        if (mean < best_mean) {
            best_mean = mean;
            winner = c;
        }
    }
    return winner;
}

const Individual& cluster_best(const Clustering& clu, const Population& pop, std::size_t winner) {
    assert(clu.assignments.size() == pop.size());
    const Individual* best = nullptr;
    for (std::size_t i = 0; i < pop.size(); ++i) {
        if (clu.assignments[i] != winner)
            continue;
        if (best == nullptr || pop.members[i].objective() < best->objective())
            best = &pop.members[i];
    }
    if (best == nullptr)
        throw StateError("cluster_best: winner cluster is empty");
    return *best;
}

} // namespace clude
