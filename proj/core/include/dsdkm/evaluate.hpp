#ifndef DSDKM_EVALUATE_HPP
#define DSDKM_EVALUATE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dsdkm/kmeans.hpp"
#include "dsdkm/metrics.hpp"

namespace dsdkm {

/// Nothing is an outlier.
struct NoOutliers {};

/**
 * A point is an outlier when its distance to its centroid exceeds
 * `mean + c * sd` of its cluster's member distances (population sd).
 *
 * With `m` members, no single point can sit more than `sqrt(m - 1)` standard
 * deviations above the mean, so clusters of `m <= c*c + 1` points never flag
 * anything at this threshold.
 */
struct SigmaOutliers {
    double c = 3.0;
};

/// A point is an outlier when its distance exceeds its cluster's q-quantile (linear interpolation).
struct QuantileOutliers {
    double q = 0.95;
};

using OutlierPolicy = std::variant<NoOutliers, SigmaOutliers, QuantileOutliers>;

/// Throws std::invalid_argument if the policy parameters are out of range.
void validate_policy(const OutlierPolicy& policy);

/// `none`, `sigma(c=3)`, `quantile(q=0.95)`.
std::string to_string(const OutlierPolicy& policy);

struct EvaluationReport {
    /// Members per cluster with outliers removed.
    std::vector<std::size_t> cluster_counts;
    std::size_t total = 0;
    std::size_t clustered = 0;
    std::size_t flagged = 0;
    double accuracy_pct = 0.0;
    double outlier_pct = 0.0;
    OutlierPolicy policy;
    DistanceSpec metric;
    std::uint64_t seed = default_seed;
};

/// Per-point outlier flags under `policy`, using the model's own metric.
std::vector<bool> flag_outliers(std::span<const FeatureVector> dataset,
                                const ClusterModel& model,
                                const OutlierPolicy& policy);

/// `100 * clustered / total`
double cluster_accuracy_pct(std::size_t clustered, std::size_t total);

/// `100 * (total - clustered) / total`
double outlier_pct(std::size_t clustered, std::size_t total);

EvaluationReport evaluate(std::span<const FeatureVector> dataset,
                          const ClusterModel& model,
                          const OutlierPolicy& policy);

/// Fixed notation with at most `decimals` places; trailing zeros dropped, one kept.
std::string render_pct(double value, int decimals = 4);

/// Header `metric,p,instance_size,c1..ck,accuracy_pct,outlier_pct,seed`.
std::string report_csv_header(std::size_t k);
/// One data row matching report_csv_header(); full-precision percentages.
std::string report_csv_row(const EvaluationReport& report);
std::string report_to_json(const EvaluationReport& report);

} // namespace dsdkm

#endif
