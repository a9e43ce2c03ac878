#include "dsdkm/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace dsdkm {

namespace {

void check_dataset(std::span<const FeatureVector> dataset) {
    if (dataset.empty()) {
        throw std::invalid_argument("dataset is empty");
    }
    const std::size_t n = dataset.front().size();
    for (std::size_t i = 1; i < dataset.size(); ++i) {
        if (dataset[i].size() != n) {
            std::ostringstream msg;
            msg << "dimension mismatch: point " << i << " has " << dataset[i].size() << ", expected " << n;
            throw std::invalid_argument(msg.str());
        }
    }
}

void check_config(std::span<const FeatureVector> dataset, const ClusteringConfig& config) {
    check_dataset(dataset);
    if (config.k == 0) {
        throw std::invalid_argument("k must be at least 1");
    }
    if (config.k > dataset.size()) {
        std::ostringstream msg;
        msg << "k = " << config.k << " exceeds dataset size " << dataset.size();
        throw std::invalid_argument(msg.str());
    }
    if (config.max_iter == 0) {
        throw std::invalid_argument("max_iter must be at least 1");
    }
    if (!(config.shift_tol >= 0.0) || !std::isfinite(config.shift_tol)) {
        throw std::invalid_argument("shift_tol must be a finite non-negative number");
    }
    validate_spec(config.metric);
}

std::size_t nearest(const FeatureVector& x, std::span<const FeatureVector> centroids, const DistanceSpec& metric) {
    std::size_t best = 0;
    double best_d = distance(metric, x, centroids[0]);
    for (std::size_t j = 1; j < centroids.size(); ++j) {
        const double d = distance(metric, x, centroids[j]);
        if (d < best_d) {
            best_d = d;
            best = j;
        }
    }
    return best;
}

double max_shift(std::span<const FeatureVector> a, std::span<const FeatureVector> b) {
    double shift = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        for (std::size_t i = 0; i < a[j].size(); ++i) {
            shift = std::max(shift, std::abs(a[j][i] - b[j][i]));
        }
    }
    return shift;
}

std::vector<FeatureVector> kmeans_plus_plus(std::span<const FeatureVector> dataset, std::size_t k,
                                            const DistanceSpec& metric, std::mt19937_64& rng) {
    const std::size_t n = dataset.size();
    std::vector<FeatureVector> chosen;
    chosen.reserve(k);
    std::vector<bool> taken(n, false);

    std::size_t first = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    chosen.push_back(dataset[first]);
    taken[first] = true;

    std::vector<double> nearest_d(n);
    for (std::size_t i = 0; i < n; ++i) {
        nearest_d[i] = distance(metric, dataset[i], chosen.back());
    }

    std::vector<double> weights(n);
    while (chosen.size() < k) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            weights[i] = taken[i] ? 0.0 : nearest_d[i] * nearest_d[i];
            total += weights[i];
        }
        std::size_t next = 0;
        if (total > 0.0 && std::isfinite(total)) {
            next = std::discrete_distribution<std::size_t>(weights.begin(), weights.end())(rng);
        } else {
            // Every remaining point coincides with a chosen centre.
            std::vector<std::size_t> free;
            for (std::size_t i = 0; i < n; ++i) {
                if (!taken[i]) {
                    free.push_back(i);
                }
            }
            next = free[std::uniform_int_distribution<std::size_t>(0, free.size() - 1)(rng)];
        }
        taken[next] = true;
        chosen.push_back(dataset[next]);
        for (std::size_t i = 0; i < n; ++i) {
            nearest_d[i] = std::min(nearest_d[i], distance(metric, dataset[i], chosen.back()));
        }
    }
    return chosen;
}

} // namespace

std::string_view init_name(InitMethod method) noexcept {
    switch (method) {
    case InitMethod::RandomPoints: return "random";
    case InitMethod::KMeansPlusPlus: return "kmeans++";
    case InitMethod::Explicit: return "explicit";
    }
    return "unknown";
}

InitMethod parse_init_method(std::string_view name) {
    if (name == "random") return InitMethod::RandomPoints;
    if (name == "kmeans++") return InitMethod::KMeansPlusPlus;
    if (name == "explicit") return InitMethod::Explicit;
    throw std::invalid_argument("unknown init method '" + std::string(name) + "' (expected random, kmeans++ or explicit)");
}

std::vector<FeatureVector> init_centroids(std::span<const FeatureVector> dataset, const ClusteringConfig& config) {
    check_config(dataset, config);
    const std::size_t n = dataset.size();
    switch (config.init) {
    case InitMethod::Explicit: {
        if (config.explicit_centroids.size() != config.k) {
            std::ostringstream msg;
            msg << "expected " << config.k << " explicit centroids, got " << config.explicit_centroids.size();
            throw std::invalid_argument(msg.str());
        }
        for (const auto& c : config.explicit_centroids) {
            if (c.size() != dataset.front().size()) {
                std::ostringstream msg;
                msg << "explicit centroid dimension " << c.size() << " does not match dataset dimension "
                    << dataset.front().size();
                throw std::invalid_argument(msg.str());
            }
        }
        return config.explicit_centroids;
    }
    case InitMethod::RandomPoints: {
        std::mt19937_64 rng(config.seed);
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::vector<FeatureVector> out;
        out.reserve(config.k);
        for (std::size_t i = 0; i < config.k; ++i) {
            const std::size_t j = std::uniform_int_distribution<std::size_t>(i, n - 1)(rng);
            std::swap(idx[i], idx[j]);
            out.push_back(dataset[idx[i]]);
        }
        return out;
    }
    case InitMethod::KMeansPlusPlus: {
        std::mt19937_64 rng(config.seed);
        return kmeans_plus_plus(dataset, config.k, config.metric, rng);
    }
    }
    throw std::logic_error("unhandled init method");
}

std::vector<std::size_t> assign(std::span<const FeatureVector> dataset,
                                std::span<const FeatureVector> centroids,
                                const DistanceSpec& metric,
                                std::size_t jobs) {
    if (centroids.empty()) {
        throw std::invalid_argument("cannot assign points to zero centroids");
    }
    std::vector<std::size_t> out(dataset.size());
    if (dataset.empty()) {
        return out;
    }
    const std::size_t dim = centroids.front().size();
    for (const auto& c : centroids) {
        if (c.size() != dim) {
            throw std::invalid_argument("centroids have inconsistent dimensions");
        }
    }
    if (dataset.front().size() != dim) {
        std::ostringstream msg;
        msg << "dimension mismatch: points have " << dataset.front().size() << ", centroids have " << dim;
        throw std::invalid_argument(msg.str());
    }

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            out[i] = nearest(dataset[i], centroids, metric);
        }
    };

    const std::size_t workers = std::clamp<std::size_t>(jobs, 1, dataset.size());
    if (workers == 1) {
        work(0, dataset.size());
        return out;
    }
    // Each point is written by exactly one worker, so the result is independent of `jobs`.
    const std::size_t chunk = (dataset.size() + workers - 1) / workers;
    std::vector<std::jthread> threads;
    threads.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) {
        const std::size_t begin = std::min(w * chunk, dataset.size());
        const std::size_t end = std::min(begin + chunk, dataset.size());
        threads.emplace_back(work, begin, end);
    }
    work(0, std::min(chunk, dataset.size()));
    return out;
}

std::vector<FeatureVector> update_centroids(std::span<const FeatureVector> dataset,
                                            std::span<const std::size_t> assignments,
                                            std::span<const FeatureVector> previous,
                                            std::vector<bool>* empty) {
    const std::size_t k = previous.size();
    if (assignments.size() != dataset.size()) {
        throw std::invalid_argument("assignment count does not match dataset size");
    }
    if (k == 0) {
        throw std::invalid_argument("update needs at least one centroid");
    }
    const std::size_t dim = previous.front().size();
    std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        const std::size_t c = assignments[i];
        if (c >= k) {
            std::ostringstream msg;
            msg << "assignment " << c << " of point " << i << " is outside [0, " << k << ")";
            throw std::invalid_argument(msg.str());
        }
        for (std::size_t a = 0; a < dim; ++a) {
            sums[c][a] += dataset[i][a];
        }
        ++counts[c];
    }
    std::vector<FeatureVector> out;
    out.reserve(k);
    if (empty) {
        empty->assign(k, false);
    }
    for (std::size_t c = 0; c < k; ++c) {
        if (counts[c] == 0) {
            out.push_back(previous[c]);
            if (empty) {
                (*empty)[c] = true;
            }
            continue;
        }
        const double denom = static_cast<double>(counts[c]);
        for (double& s : sums[c]) {
            s /= denom;
        }
        out.emplace_back(std::move(sums[c]));
    }
    return out;
}

void reseed_empty(std::span<const FeatureVector> dataset,
                  std::vector<FeatureVector>& centroids,
                  const std::vector<bool>& empty,
                  const DistanceSpec& metric) {
    std::vector<bool> used(dataset.size(), false);
    for (std::size_t c = 0; c < centroids.size(); ++c) {
        if (!empty[c]) {
            continue;
        }
        std::size_t best = dataset.size();
        double best_d = -1.0;
        for (std::size_t i = 0; i < dataset.size(); ++i) {
            if (used[i]) {
                continue;
            }
            const double d = distance(metric, dataset[i], centroids[c]);
            if (d > best_d) {
                best_d = d;
                best = i;
            }
        }
        if (best == dataset.size()) {
            return;
        }
        used[best] = true;
        centroids[c] = dataset[best];
    }
}

ClusterModel fit(std::span<const FeatureVector> dataset, const ClusteringConfig& config) {
    check_config(dataset, config);

    ClusterModel model{init_centroids(dataset, config), {}, 0, false, 0.0, {}, config.metric, config.seed};
    model.assignments = assign(dataset, model.centroids, config.metric, config.jobs);
    model.sse_history.push_back(sse(dataset, model.centroids, model.assignments));

    std::vector<bool> empty;
    while (model.iterations_run < config.max_iter) {
        ++model.iterations_run;
        auto next = update_centroids(dataset, model.assignments, model.centroids, &empty);
        if (std::find(empty.begin(), empty.end(), true) != empty.end()) {
            reseed_empty(dataset, next, empty, config.metric);
        }
        const double shift = max_shift(next, model.centroids);
        auto next_assign = assign(dataset, next, config.metric, config.jobs);
        const bool changed = next_assign != model.assignments;
        model.centroids = std::move(next);
        model.assignments = std::move(next_assign);
        model.sse_history.push_back(sse(dataset, model.centroids, model.assignments));
        if (!changed || shift <= config.shift_tol) {
            model.converged = true;
            break;
        }
    }
    model.final_sse = model.sse_history.back();
    return model;
}

double sse(std::span<const FeatureVector> dataset,
           std::span<const FeatureVector> centroids,
           std::span<const std::size_t> assignments) {
    if (assignments.size() != dataset.size()) {
        throw std::invalid_argument("assignment count does not match dataset size");
    }
    const auto sq = DistanceSpec::squared_euclidean();
    double total = 0.0;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        if (assignments[i] >= centroids.size()) {
            throw std::invalid_argument("assignment outside the centroid range");
        }
        total += distance(sq, dataset[i], centroids[assignments[i]]);
    }
    return total;
}

std::vector<std::size_t> cluster_sizes(std::span<const std::size_t> assignments, std::size_t k) {
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t c : assignments) {
        if (c >= k) {
            throw std::invalid_argument("assignment outside the centroid range");
        }
        ++sizes[c];
    }
    return sizes;
}

std::string model_to_json(const ClusterModel& model) {
    nlohmann::ordered_json doc;
    auto centroids = nlohmann::ordered_json::array();
    for (const auto& c : model.centroids) {
        centroids.push_back(std::vector<double>(c.begin(), c.end()));
    }
    doc["centroids"] = std::move(centroids);
    doc["assignments"] = model.assignments;
    doc["iterations"] = model.iterations_run;
    doc["converged"] = model.converged;
    doc["sse"] = model.final_sse;
    doc["sse_history"] = model.sse_history;
    doc["seed"] = model.seed;
    doc["metric"] = std::string(metric_name(model.metric.kind));
    doc["p"] = model.metric.p ? nlohmann::ordered_json(*model.metric.p) : nlohmann::ordered_json(nullptr);
    return doc.dump(2) + "\n";
}

ClusterModel model_from_json(const std::string& text) {
    try {
        const auto doc = nlohmann::json::parse(text);
        ClusterModel model;
        for (const auto& c : doc.at("centroids")) {
            model.centroids.emplace_back(c.get<std::vector<double>>());
        }
        model.assignments = doc.at("assignments").get<std::vector<std::size_t>>();
        model.iterations_run = doc.at("iterations").get<std::size_t>();
        model.converged = doc.at("converged").get<bool>();
        model.final_sse = doc.at("sse").get<double>();
        if (doc.contains("sse_history")) {
            model.sse_history = doc.at("sse_history").get<std::vector<double>>();
        }
        model.seed = doc.at("seed").get<std::uint64_t>();
        model.metric.kind = parse_metric_kind(doc.at("metric").get<std::string>());
        if (!doc.at("p").is_null()) {
            model.metric.p = doc.at("p").get<double>();
        }
        validate_spec(model.metric);
        for (std::size_t a : model.assignments) {
            if (a >= model.centroids.size()) {
                throw std::invalid_argument("model assignment outside the centroid range");
            }
        }
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed model document: ") + e.what());
    }
}

} // namespace dsdkm
