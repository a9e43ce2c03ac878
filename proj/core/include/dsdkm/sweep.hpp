#ifndef DSDKM_SWEEP_HPP
#define DSDKM_SWEEP_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "dsdkm/dataset.hpp"
#include "dsdkm/evaluate.hpp"
#include "dsdkm/kmeans.hpp"

/**
 * @file sweep.hpp
 *
 * @brief Experiment grids: DSD p values (or metric kinds) crossed with
 * dataset prefix sizes.
 *
 * Every cell fits on the first `size` rows of the same dataset with the same
 * base seed, so cells differ only in p, metric and size. Cells may run in
 * parallel; rows always come back in plan order.
 */

namespace dsdkm {

enum class SweepMode {
    PSweep,
    MetricComparison,
};

std::string_view mode_name(SweepMode mode) noexcept;

/// {1.0, 1.2, 1.34, 1.42, 1.45, 1.5, 1.523, 1.55, 1.56, 3.0}
std::vector<double> default_p_grid();

/// {1000, 2000, 3000, 4000, 5097}
std::vector<std::size_t> default_instance_sizes();

/// The six kinds; Minkowski at p = 1.5 and DSD at p = 1.523.
std::vector<DistanceSpec> default_comparison_metrics();

inline constexpr double default_dsd_p = 1.523;

struct SweepPlan {
    std::vector<double> p_values = default_p_grid();
    std::vector<std::size_t> instance_sizes = default_instance_sizes();
    std::vector<DistanceSpec> metrics = default_comparison_metrics();
    /// k, init, seed, max_iter and shift_tol are taken from here; metric is per cell.
    ClusteringConfig base{};
    OutlierPolicy policy = SigmaOutliers{3.0};
    /// Concurrent cells.
    std::size_t jobs = 1;
    /// Seed of the row shuffle applied before slicing prefixes; recorded only.
    std::uint64_t shuffle_seed = default_seed;
    std::string dataset_source;
};

struct SweepRow {
    DistanceSpec metric;
    std::size_t instance_size = 0;
    std::vector<std::size_t> cluster_counts;
    std::size_t clustered = 0;
    double accuracy_pct = 0.0;
    double outlier_pct = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    double sse = 0.0;
    double wall_ms = 0.0;
    std::uint64_t seed = default_seed;
    /// Kept in memory for label cross-tabulation; never serialized.
    std::vector<std::size_t> assignments;
};

struct SweepResult {
    SweepMode mode = SweepMode::PSweep;
    SweepPlan plan;
    std::vector<SweepRow> rows;
    std::string environment;
};

/// Checks the plan against a dataset of `dataset_size` rows. Throws std::invalid_argument.
void validate_plan(const SweepPlan& plan, SweepMode mode, std::size_t dataset_size);

/// DSD(p) for every p, p-major then size.
SweepResult run_p_sweep(const SweepPlan& plan, const Dataset& dataset);

/// Every metric in `plan.metrics`, metric-major then size.
SweepResult run_metric_comparison(const SweepPlan& plan, const Dataset& dataset);

/// Deterministic CSV: report columns only (timings live in the JSON).
std::string sweep_to_csv(const SweepResult& result);

/// Plan echo, environment stamp, and rows including iterations and wall time.
std::string sweep_to_json(const SweepResult& result);

/// Plot series at the largest instance size: fig3.csv for a p sweep,
/// fig4.csv (outlier %) and fig5.csv (accuracy %) for a metric comparison.
struct FigureData {
    std::string name;
    std::string content;
};
std::vector<FigureData> figure_data(const SweepResult& result);

/// Writes figure_data() into `dir`, returning the paths. Nothing is written for an empty result.
std::vector<std::filesystem::path> emit_figure_data(const SweepResult& result, const std::filesystem::path& dir);

/// Label used in figure files, e.g. `euclidean` or `dsd(p=1.523)`.
std::string metric_label(const DistanceSpec& spec);

} // namespace dsdkm

#endif
