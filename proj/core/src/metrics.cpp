#include "dsdkm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dsdkm {

namespace {

void check_values(const std::vector<double>& values) {
    if (values.empty()) {
        throw std::invalid_argument("feature vector must have at least one dimension");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            std::ostringstream msg;
            msg << "feature vector entry " << i << " is not finite";
            throw std::invalid_argument(msg.str());
        }
    }
}

double sum_squares(std::span<const double> x, std::span<const double> y) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        acc += d * d;
    }
    return acc;
}

double sum_abs(std::span<const double> x, std::span<const double> y) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += std::abs(x[i] - y[i]);
    }
    return acc;
}

double max_abs(std::span<const double> x, std::span<const double> y) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc = std::max(acc, std::abs(x[i] - y[i]));
    }
    return acc;
}

double sum_pow(std::span<const double> x, std::span<const double> y, double p) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += std::pow(std::abs(x[i] - y[i]), p);
    }
    return acc;
}

} // namespace

FeatureVector::FeatureVector(std::vector<double> values) : values_(std::move(values)) {
    check_values(values_);
}

FeatureVector::FeatureVector(std::initializer_list<double> values) : values_(values) {
    check_values(values_);
}

std::string_view metric_name(MetricKind kind) noexcept {
    switch (kind) {
    case MetricKind::Euclidean: return "euclidean";
    case MetricKind::SquaredEuclidean: return "sqeuclidean";
    case MetricKind::CityBlock: return "cityblock";
    case MetricKind::Chebyshev: return "chebyshev";
    case MetricKind::Minkowski: return "minkowski";
    case MetricKind::DesignSpecification: return "dsd";
    }
    return "unknown";
}

MetricKind parse_metric_kind(std::string_view name) {
    for (MetricKind kind : all_metric_kinds) {
        if (metric_name(kind) == name) {
            return kind;
        }
    }
    throw std::invalid_argument("unknown metric '" + std::string(name) +
                                "' (expected euclidean, sqeuclidean, cityblock, chebyshev, minkowski or dsd)");
}

std::string to_string(const DistanceSpec& spec) {
    std::ostringstream out;
    out << metric_name(spec.kind);
    if (spec.p) {
        out << "(p=" << *spec.p << ")";
    }
    return out.str();
}

DistanceSpec validate_spec(DistanceSpec spec) {
    const std::string name(metric_name(spec.kind));
    if (!takes_parameter(spec.kind)) {
        if (spec.p) {
            throw std::invalid_argument("metric " + name + " does not take a p parameter");
        }
        return spec;
    }
    if (!spec.p) {
        throw std::invalid_argument("metric " + name + " requires a p parameter");
    }
    const double p = *spec.p;
    if (!std::isfinite(p)) {
        throw std::invalid_argument("p must be finite for metric " + name);
    }
    if (p < 1.0) {
        throw std::invalid_argument("p below 1 for metric " + name);
    }
    if (spec.kind == MetricKind::DesignSpecification && p > 3.0) {
        throw std::invalid_argument("p above 3 for metric dsd");
    }
    return spec;
}

double distance(const DistanceSpec& spec, std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        std::ostringstream msg;
        msg << "dimension mismatch: " << x.size() << " vs " << y.size();
        throw std::invalid_argument(msg.str());
    }
    switch (spec.kind) {
    case MetricKind::Euclidean: return std::sqrt(sum_squares(x, y));
    case MetricKind::SquaredEuclidean: return sum_squares(x, y);
    case MetricKind::CityBlock: return sum_abs(x, y);
    case MetricKind::Chebyshev: return max_abs(x, y);
    case MetricKind::Minkowski: {
        const double p = spec.p.value_or(2.0);
        return std::pow(sum_pow(x, y, p), 1.0 / p);
    }
    case MetricKind::DesignSpecification: {
        const double p = spec.p.value_or(1.5);
        return std::pow(sum_squares(x, y), p / 3.0);
    }
    }
    throw std::logic_error("unhandled metric kind");
}

DistanceMatrix pairwise_distances(const DistanceSpec& spec,
                                  std::span<const FeatureVector> points,
                                  std::span<const FeatureVector> centers) {
    DistanceMatrix out;
    out.rows = points.size();
    out.cols = centers.size();
    out.data.resize(out.rows * out.cols);
    for (std::size_t i = 0; i < out.rows; ++i) {
        for (std::size_t j = 0; j < out.cols; ++j) {
            out.data[i * out.cols + j] = distance(spec, points[i], centers[j]);
        }
    }
    return out;
}

} // namespace dsdkm
