#ifndef DSDKM_KMEANS_HPP
#define DSDKM_KMEANS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dsdkm/metrics.hpp"

/**
 * @file kmeans.hpp
 *
 * @brief Lloyd iteration with a pluggable assignment metric.
 *
 * The assignment step uses the configured DistanceSpec. The update step is
 * always the arithmetic mean and the reported objective is always the
 * squared-Euclidean SSE, whatever the metric. For Euclidean, squared
 * Euclidean and DSD this is ordinary Lloyd (all three rank centroids by the
 * same sum of squares); for city-block and Chebyshev it is a heuristic with
 * no monotonicity guarantee, and termination relies on `max_iter`.
 */

namespace dsdkm {

enum class InitMethod {
    RandomPoints,
    KMeansPlusPlus,
    Explicit,
};

std::string_view init_name(InitMethod method) noexcept;
InitMethod parse_init_method(std::string_view name);

inline constexpr std::uint64_t default_seed = 42;

struct ClusteringConfig {
    std::size_t k = 3;
    DistanceSpec metric = DistanceSpec::design_specification(1.523);
    InitMethod init = InitMethod::KMeansPlusPlus;
    /// Only read when `init == InitMethod::Explicit`.
    std::vector<FeatureVector> explicit_centroids;
    std::uint64_t seed = default_seed;
    std::size_t max_iter = 100;
    double shift_tol = 1e-9;
    /// Worker threads for the assignment step. Results do not depend on it.
    std::size_t jobs = 1;
};

struct ClusterModel {
    std::vector<FeatureVector> centroids;
    std::vector<std::size_t> assignments;
    std::size_t iterations_run = 0;
    bool converged = false;
    double final_sse = 0.0;
    /// SSE after the initial assignment and after every iteration.
    std::vector<double> sse_history;
    DistanceSpec metric;
    std::uint64_t seed = default_seed;

    std::size_t k() const noexcept { return centroids.size(); }
    bool operator==(const ClusterModel&) const = default;
};

/// Seeded choice of `config.k` starting centroids.
std::vector<FeatureVector> init_centroids(std::span<const FeatureVector> dataset, const ClusteringConfig& config);

/// Nearest centroid per point; ties go to the lowest index.
std::vector<std::size_t> assign(std::span<const FeatureVector> dataset,
                                std::span<const FeatureVector> centroids,
                                const DistanceSpec& metric,
                                std::size_t jobs = 1);

/**
 * Cluster means, accumulated in ascending point order.
 *
 * A cluster with no members keeps its entry in `previous` so the caller can
 * re-seed it; `empty` reports which ones those are.
 */
std::vector<FeatureVector> update_centroids(std::span<const FeatureVector> dataset,
                                            std::span<const std::size_t> assignments,
                                            std::span<const FeatureVector> previous,
                                            std::vector<bool>* empty = nullptr);

/**
 * Replaces each flagged centroid with the data point farthest from it under
 * `metric`, never reusing a point for two clusters in one call.
 */
void reseed_empty(std::span<const FeatureVector> dataset,
                  std::vector<FeatureVector>& centroids,
                  const std::vector<bool>& empty,
                  const DistanceSpec& metric);

/// Runs Lloyd iterations to convergence or `max_iter`.
ClusterModel fit(std::span<const FeatureVector> dataset, const ClusteringConfig& config);

/// Sum of squared Euclidean residuals to assigned centroids.
double sse(std::span<const FeatureVector> dataset,
           std::span<const FeatureVector> centroids,
           std::span<const std::size_t> assignments);

inline double sse(std::span<const FeatureVector> dataset, const ClusterModel& model) {
    return sse(dataset, model.centroids, model.assignments);
}

/// Member count per cluster.
std::vector<std::size_t> cluster_sizes(std::span<const std::size_t> assignments, std::size_t k);

/// JSON with `centroids`, `assignments`, `iterations`, `converged`, `sse`, `seed`, `metric`, `p`.
std::string model_to_json(const ClusterModel& model);
ClusterModel model_from_json(const std::string& text);

} // namespace dsdkm

#endif
