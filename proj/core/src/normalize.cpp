#include "dsdkm/normalize.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace dsdkm {

namespace {

void require_dimension(const FeatureStats& stats, const FeatureVector& v) {
    if (v.size() != stats.dimension()) {
        std::ostringstream msg;
        msg << "dimension mismatch: stats have " << stats.dimension() << ", vector has " << v.size();
        throw std::invalid_argument(msg.str());
    }
}

} // namespace

FeatureStats::FeatureStats(std::vector<double> min, std::vector<double> max)
    : min_(std::move(min)), max_(std::move(max)) {
    if (min_.size() != max_.size()) {
        throw std::invalid_argument("stats min and max must have equal length");
    }
    if (min_.empty()) {
        throw std::invalid_argument("stats must have at least one attribute");
    }
    for (std::size_t i = 0; i < min_.size(); ++i) {
        if (!(min_[i] <= max_[i])) {
            std::ostringstream msg;
            msg << "stats attribute " << i << " has min > max";
            throw std::invalid_argument(msg.str());
        }
    }
}

FeatureStats fit_stats(std::span<const FeatureVector> dataset) {
    if (dataset.empty()) {
        throw std::invalid_argument("cannot fit normalization on an empty dataset");
    }
    const std::size_t n = dataset.front().size();
    std::vector<double> lo(dataset.front().begin(), dataset.front().end());
    std::vector<double> hi = lo;
    for (std::size_t row = 1; row < dataset.size(); ++row) {
        const auto& v = dataset[row];
        if (v.size() != n) {
            std::ostringstream msg;
            msg << "ragged dataset: row " << row << " has " << v.size() << " attributes, expected " << n;
            throw std::invalid_argument(msg.str());
        }
        for (std::size_t i = 0; i < n; ++i) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }
    }
    return FeatureStats(std::move(lo), std::move(hi));
}

FeatureVector transform(const FeatureStats& stats, const FeatureVector& v) {
    require_dimension(stats, v);
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = stats.degenerate(i) ? 0.0 : (v[i] - stats.min()[i]) / (stats.max()[i] - stats.min()[i]);
    }
    return FeatureVector(std::move(out));
}

FeatureVector inverse_transform(const FeatureStats& stats, const FeatureVector& v) {
    require_dimension(stats, v);
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = stats.degenerate(i) ? stats.min()[i]
                                     : v[i] * (stats.max()[i] - stats.min()[i]) + stats.min()[i];
    }
    return FeatureVector(std::move(out));
}

std::pair<FeatureStats, std::vector<FeatureVector>> fit_transform(std::span<const FeatureVector> dataset) {
    FeatureStats stats = fit_stats(dataset);
    std::vector<FeatureVector> out;
    out.reserve(dataset.size());
    for (const auto& v : dataset) {
        out.push_back(transform(stats, v));
    }
    return {std::move(stats), std::move(out)};
}

std::string stats_to_json(const FeatureStats& stats) {
    nlohmann::ordered_json doc;
    doc["min"] = stats.min();
    doc["max"] = stats.max();
    return doc.dump(2) + "\n";
}

FeatureStats stats_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
        return FeatureStats(doc.at("min").get<std::vector<double>>(), doc.at("max").get<std::vector<double>>());
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed stats document: ") + e.what());
    }
}

} // namespace dsdkm
