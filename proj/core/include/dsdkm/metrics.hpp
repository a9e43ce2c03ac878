#ifndef DSDKM_METRICS_HPP
#define DSDKM_METRICS_HPP

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

/**
 * @file metrics.hpp
 *
 * @brief Distance kernels used by the clustering layer.
 *
 * Six kinds are supported. Two of them take a real parameter `p`:
 * Minkowski, `(sum |d_i|^p)^(1/p)`, and the design-specification distance,
 * `(sum d_i^2)^(p/3)`. The latter passes through Euclidean at `p = 1.5`
 * and squared Euclidean at `p = 3`; it is only a true metric (triangle
 * inequality included) for `p <= 1.5`.
 */

namespace dsdkm {

/**
 * @brief A point in attribute space.
 *
 * Always at least one-dimensional with finite entries; a violating input is
 * rejected at construction.
 */
class FeatureVector {
public:
    FeatureVector() = delete;
    explicit FeatureVector(std::vector<double> values);
    FeatureVector(std::initializer_list<double> values);

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    std::span<const double> values() const noexcept { return values_; }
    auto begin() const noexcept { return values_.begin(); }
    auto end() const noexcept { return values_.end(); }

    bool operator==(const FeatureVector&) const = default;

private:
    std::vector<double> values_;
};

enum class MetricKind {
    Euclidean,
    SquaredEuclidean,
    CityBlock,
    Chebyshev,
    Minkowski,
    DesignSpecification,
};

/// All six kinds, in the order used by the metric comparison.
inline constexpr MetricKind all_metric_kinds[] = {
    MetricKind::Euclidean,  MetricKind::SquaredEuclidean, MetricKind::CityBlock,
    MetricKind::Chebyshev,  MetricKind::Minkowski,        MetricKind::DesignSpecification,
};

/// CLI/config name: `euclidean`, `sqeuclidean`, `cityblock`, `chebyshev`, `minkowski`, `dsd`.
std::string_view metric_name(MetricKind kind) noexcept;

/// Inverse of metric_name(). Throws std::invalid_argument on an unknown name.
MetricKind parse_metric_kind(std::string_view name);

/// Whether the kind carries the user parameter `p`.
constexpr bool takes_parameter(MetricKind kind) noexcept {
    return kind == MetricKind::Minkowski || kind == MetricKind::DesignSpecification;
}

/**
 * @brief A metric kind plus its parameter where one applies.
 *
 * Construct through the factories; validate_spec() enforces the bounds.
 */
struct DistanceSpec {
    MetricKind kind = MetricKind::Euclidean;
    std::optional<double> p;

    static DistanceSpec euclidean() { return {MetricKind::Euclidean, std::nullopt}; }
    static DistanceSpec squared_euclidean() { return {MetricKind::SquaredEuclidean, std::nullopt}; }
    static DistanceSpec city_block() { return {MetricKind::CityBlock, std::nullopt}; }
    static DistanceSpec chebyshev() { return {MetricKind::Chebyshev, std::nullopt}; }
    static DistanceSpec minkowski(double p) { return {MetricKind::Minkowski, p}; }
    static DistanceSpec design_specification(double p) { return {MetricKind::DesignSpecification, p}; }

    bool operator==(const DistanceSpec&) const = default;
};

/// Human-readable form, e.g. `dsd(p=1.523)` or `chebyshev`.
std::string to_string(const DistanceSpec& spec);

/**
 * Returns `spec` unchanged if it is well-formed; otherwise throws
 * std::invalid_argument naming the violated bound.
 *
 * DSD needs `1 <= p <= 3`, Minkowski needs `p >= 1`, and `p` must be finite.
 * Parameterless kinds must not carry a `p`.
 */
DistanceSpec validate_spec(DistanceSpec spec);

/**
 * Distance between two equal-length vectors. `spec` is assumed validated.
 *
 * Sums are accumulated left to right in ascending index order, then a
 * single power (if any) is applied, so results are bit-reproducible and
 * exactly symmetric. Throws std::invalid_argument on dimension mismatch.
 */
double distance(const DistanceSpec& spec, std::span<const double> x, std::span<const double> y);

inline double distance(const DistanceSpec& spec, const FeatureVector& x, const FeatureVector& y) {
    return distance(spec, x.values(), y.values());
}

/// Row-major `rows x cols` matrix of distances.
struct DistanceMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    double operator()(std::size_t i, std::size_t j) const noexcept { return data[i * cols + j]; }
};

/// Entry (i, j) is `distance(spec, points[i], centers[j])`, computed by the same kernel.
DistanceMatrix pairwise_distances(const DistanceSpec& spec,
                                  std::span<const FeatureVector> points,
                                  std::span<const FeatureVector> centers);

} // namespace dsdkm

#endif
