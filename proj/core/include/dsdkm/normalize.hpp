#ifndef DSDKM_NORMALIZE_HPP
#define DSDKM_NORMALIZE_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dsdkm/metrics.hpp"

namespace dsdkm {

/**
 * @brief Per-attribute minimum and maximum of a fitted dataset.
 *
 * Immutable after fit(); safe to share across threads.
 */
class FeatureStats {
public:
    FeatureStats(std::vector<double> min, std::vector<double> max);

    std::size_t dimension() const noexcept { return min_.size(); }
    const std::vector<double>& min() const noexcept { return min_; }
    const std::vector<double>& max() const noexcept { return max_; }

    /// True when attribute `i` has `min == max`.
    bool degenerate(std::size_t i) const noexcept { return min_[i] == max_[i]; }

    bool operator==(const FeatureStats&) const = default;

private:
    std::vector<double> min_;
    std::vector<double> max_;
};

/// Componentwise min/max. Throws on an empty or ragged dataset.
FeatureStats fit_stats(std::span<const FeatureVector> dataset);

/**
 * Min-max scaling `(v - min) / (max - min)` per attribute.
 *
 * Degenerate attributes map to 0. Values outside the fitted range are not
 * clamped.
 */
FeatureVector transform(const FeatureStats& stats, const FeatureVector& v);

/// Undoes transform() on non-degenerate attributes; degenerate ones come back as `min`.
FeatureVector inverse_transform(const FeatureStats& stats, const FeatureVector& v);

std::pair<FeatureStats, std::vector<FeatureVector>> fit_transform(std::span<const FeatureVector> dataset);

/// `{"min": [...], "max": [...]}`
std::string stats_to_json(const FeatureStats& stats);
FeatureStats stats_from_json(const std::string& text);

} // namespace dsdkm

#endif
