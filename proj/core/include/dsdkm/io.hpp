#ifndef DSDKM_IO_HPP
#define DSDKM_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include "dsdkm/dataset.hpp"
#include "dsdkm/evaluate.hpp"
#include "dsdkm/kmeans.hpp"
#include "dsdkm/normalize.hpp"
#include "dsdkm/sweep.hpp"

namespace dsdkm {

enum class ReportFormat {
    Csv,
    Json,
};

ReportFormat parse_report_format(std::string_view name);

/// Single-row CSV (header + row) or JSON document.
void save_report(const EvaluationReport& report, const std::filesystem::path& path, ReportFormat format);

/// `sweep.csv` layout or `sweep.json` layout.
void save_report(const SweepResult& result, const std::filesystem::path& path, ReportFormat format);

/// Datasets are always CSV.
void save_report(const Dataset& dataset, const std::filesystem::path& path);

void save_model(const ClusterModel& model, const std::filesystem::path& path);
ClusterModel load_model(const std::filesystem::path& path);

void save_stats(const FeatureStats& stats, const std::filesystem::path& path);
FeatureStats load_stats(const std::filesystem::path& path);

/// Whole-file write; the error message names `path`.
void write_file(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

} // namespace dsdkm

#endif
