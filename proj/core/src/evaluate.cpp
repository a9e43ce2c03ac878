#include "dsdkm/evaluate.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "text_io.hpp"

namespace dsdkm {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Type-7 (linear interpolation) quantile of an ascending sample.
double quantile_sorted(const std::vector<double>& sorted, double q) {
    const double h = static_cast<double>(sorted.size() - 1) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

void check_total(std::size_t clustered, std::size_t total) {
    if (total == 0) {
        throw std::invalid_argument("total must be positive");
    }
    if (clustered > total) {
        throw std::invalid_argument("clustered count exceeds total");
    }
}

} // namespace

void validate_policy(const OutlierPolicy& policy) {
    std::visit(overloaded{
                   [](const NoOutliers&) {},
                   [](const SigmaOutliers& s) {
                       if (!(s.c > 0.0) || !std::isfinite(s.c)) {
                           throw std::invalid_argument("outlier c must be a positive finite number");
                       }
                   },
                   [](const QuantileOutliers& s) {
                       if (!(s.q > 0.0 && s.q <= 1.0)) {
                           throw std::invalid_argument("outlier q must lie in (0, 1]");
                       }
                   },
               },
               policy);
}

std::string to_string(const OutlierPolicy& policy) {
    return std::visit(overloaded{
                          [](const NoOutliers&) { return std::string("none"); },
                          [](const SigmaOutliers& s) { return "sigma(c=" + detail::format_shortest(s.c) + ")"; },
                          [](const QuantileOutliers& s) { return "quantile(q=" + detail::format_shortest(s.q) + ")"; },
                      },
                      policy);
}

std::vector<bool> flag_outliers(std::span<const FeatureVector> dataset,
                                const ClusterModel& model,
                                const OutlierPolicy& policy) {
    validate_policy(policy);
    if (model.assignments.size() != dataset.size()) {
        throw std::invalid_argument("model was not fitted on this dataset (assignment count differs)");
    }
    std::vector<bool> flags(dataset.size(), false);
    if (std::holds_alternative<NoOutliers>(policy)) {
        return flags;
    }

    const std::size_t k = model.k();
    std::vector<double> dist(dataset.size());
    std::vector<std::vector<double>> members(k);
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        const std::size_t c = model.assignments[i];
        if (c >= k) {
            throw std::invalid_argument("model assignment outside the centroid range");
        }
        dist[i] = distance(model.metric, dataset[i], model.centroids[c]);
        members[c].push_back(dist[i]);
    }

    std::vector<double> threshold(k, 0.0);
    for (std::size_t c = 0; c < k; ++c) {
        auto& d = members[c];
        if (d.empty()) {
            continue;
        }
        if (const auto* s = std::get_if<SigmaOutliers>(&policy)) {
            double sum = 0.0;
            for (double v : d) {
                sum += v;
            }
            const double mean = sum / static_cast<double>(d.size());
            double ss = 0.0;
            for (double v : d) {
                ss += (v - mean) * (v - mean);
            }
            const double sd = std::sqrt(ss / static_cast<double>(d.size()));
            threshold[c] = mean + s->c * sd;
        } else {
            std::sort(d.begin(), d.end());
            threshold[c] = quantile_sorted(d, std::get<QuantileOutliers>(policy).q);
        }
    }
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        flags[i] = dist[i] > threshold[model.assignments[i]];
    }
    return flags;
}

double cluster_accuracy_pct(std::size_t clustered, std::size_t total) {
    check_total(clustered, total);
    return 100.0 * static_cast<double>(clustered) / static_cast<double>(total);
}

double outlier_pct(std::size_t clustered, std::size_t total) {
    check_total(clustered, total);
    return 100.0 * static_cast<double>(total - clustered) / static_cast<double>(total);
}

EvaluationReport evaluate(std::span<const FeatureVector> dataset,
                          const ClusterModel& model,
                          const OutlierPolicy& policy) {
    const auto flags = flag_outliers(dataset, model, policy);
    EvaluationReport report;
    report.cluster_counts.assign(model.k(), 0);
    report.total = dataset.size();
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        if (flags[i]) {
            ++report.flagged;
        } else {
            ++report.cluster_counts[model.assignments[i]];
        }
    }
    report.clustered = report.total - report.flagged;
    report.accuracy_pct = cluster_accuracy_pct(report.clustered, report.total);
    report.outlier_pct = outlier_pct(report.clustered, report.total);
    report.policy = policy;
    report.metric = model.metric;
    report.seed = model.seed;
    return report;
}

std::string render_pct(double value, int decimals) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, decimals);
    if (ec != std::errc{}) {
        throw std::runtime_error("percentage formatting failed");
    }
    std::string s(buf.data(), end);
    if (s.find('.') != std::string::npos) {
        while (s.back() == '0') {
            s.pop_back();
        }
        if (s.back() == '.') {
            s.push_back('0');
        }
    } else {
        s += ".0";
    }
    return s;
}

std::string report_csv_header(std::size_t k) {
    std::string out = "metric,p,instance_size";
    for (std::size_t c = 0; c < k; ++c) {
        out += ",c" + std::to_string(c + 1);
    }
    out += ",accuracy_pct,outlier_pct,seed";
    return out;
}

std::string report_csv_row(const EvaluationReport& report) {
    std::string out(metric_name(report.metric.kind));
    out += ',';
    if (report.metric.p) {
        out += detail::format_shortest(*report.metric.p);
    }
    out += ',' + std::to_string(report.total);
    for (std::size_t n : report.cluster_counts) {
        out += ',' + std::to_string(n);
    }
    out += ',' + detail::format_shortest(report.accuracy_pct);
    out += ',' + detail::format_shortest(report.outlier_pct);
    out += ',' + std::to_string(report.seed);
    return out;
}

std::string report_to_json(const EvaluationReport& report) {
    nlohmann::ordered_json doc;
    doc["metric"] = std::string(metric_name(report.metric.kind));
    doc["p"] = report.metric.p ? nlohmann::ordered_json(*report.metric.p) : nlohmann::ordered_json(nullptr);
    doc["seed"] = report.seed;
    doc["policy"] = to_string(report.policy);
    doc["instance_size"] = report.total;
    doc["cluster_counts"] = report.cluster_counts;
    doc["clustered"] = report.clustered;
    doc["flagged"] = report.flagged;
    doc["accuracy_pct"] = report.accuracy_pct;
    doc["outlier_pct"] = report.outlier_pct;
    doc["accuracy_display"] = render_pct(report.accuracy_pct) + "% / " + render_pct(report.outlier_pct) + "%";
    return doc.dump(2) + "\n";
}

} // namespace dsdkm
