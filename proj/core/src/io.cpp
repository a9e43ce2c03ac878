#include "dsdkm/io.hpp"

#include <stdexcept>

#include "text_io.hpp"

namespace dsdkm {

ReportFormat parse_report_format(std::string_view name) {
    if (name == "csv") return ReportFormat::Csv;
    if (name == "json") return ReportFormat::Json;
    throw std::invalid_argument("unknown report format '" + std::string(name) + "' (expected csv or json)");
}

void save_report(const EvaluationReport& report, const std::filesystem::path& path, ReportFormat format) {
    if (format == ReportFormat::Csv) {
        write_file(path, report_csv_header(report.cluster_counts.size()) + "\n" + report_csv_row(report) + "\n");
    } else {
        write_file(path, report_to_json(report));
    }
}

void save_report(const SweepResult& result, const std::filesystem::path& path, ReportFormat format) {
    write_file(path, format == ReportFormat::Csv ? sweep_to_csv(result) : sweep_to_json(result));
}

void save_report(const Dataset& dataset, const std::filesystem::path& path) {
    save_csv(dataset, path);
}

void save_model(const ClusterModel& model, const std::filesystem::path& path) {
    write_file(path, model_to_json(model));
}

ClusterModel load_model(const std::filesystem::path& path) {
    return model_from_json(read_file(path));
}

void save_stats(const FeatureStats& stats, const std::filesystem::path& path) {
    write_file(path, stats_to_json(stats));
}

FeatureStats load_stats(const std::filesystem::path& path) {
    return stats_from_json(read_file(path));
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    detail::write_text_file(path, content);
}

std::string read_file(const std::filesystem::path& path) {
    return detail::read_text_file(path);
}

} // namespace dsdkm
