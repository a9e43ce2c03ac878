#include "dsdkm/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "text_io.hpp"

namespace dsdkm {

namespace {

struct Cell {
    DistanceSpec metric;
    std::size_t size;
};

std::vector<Cell> plan_cells(const SweepPlan& plan, SweepMode mode) {
    std::vector<Cell> cells;
    if (mode == SweepMode::PSweep) {
        for (double p : plan.p_values) {
            for (std::size_t n : plan.instance_sizes) {
                cells.push_back({DistanceSpec::design_specification(p), n});
            }
        }
    } else {
        for (const auto& m : plan.metrics) {
            for (std::size_t n : plan.instance_sizes) {
                cells.push_back({m, n});
            }
        }
    }
    return cells;
}

SweepRow run_cell(const SweepPlan& plan, const Cell& cell, const Dataset& dataset) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::span<const FeatureVector> points(dataset.points.data(), cell.size);

    ClusteringConfig config = plan.base;
    config.metric = cell.metric;
    config.jobs = 1;
    ClusterModel model = fit(points, config);
    EvaluationReport report = evaluate(points, model, plan.policy);
    const auto t1 = std::chrono::steady_clock::now();

    SweepRow row;
    row.metric = cell.metric;
    row.instance_size = cell.size;
    row.cluster_counts = std::move(report.cluster_counts);
    row.clustered = report.clustered;
    row.accuracy_pct = report.accuracy_pct;
    row.outlier_pct = report.outlier_pct;
    row.iterations = model.iterations_run;
    row.converged = model.converged;
    row.sse = model.final_sse;
    row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    row.seed = config.seed;
    row.assignments = std::move(model.assignments);
    return row;
}

SweepResult run(const SweepPlan& plan, SweepMode mode, const Dataset& dataset) {
    dataset.check();
    validate_plan(plan, mode, dataset.size());

    const auto cells = plan_cells(plan, mode);
    SweepResult result;
    result.mode = mode;
    result.plan = plan;
    result.rows.resize(cells.size());

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            try {
                result.rows[i] = run_cell(plan, cells[i], dataset);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };
    const std::size_t workers = std::clamp<std::size_t>(plan.jobs, 1, cells.size());
    {
        std::vector<std::jthread> threads;
        for (std::size_t w = 1; w < workers; ++w) {
            threads.emplace_back(worker);
        }
        worker();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    std::ostringstream env;
    env << "compiler=" <<
#if defined(__clang__)
        "clang " << __clang_version__
#elif defined(__GNUC__)
        "gcc " << __VERSION__
#else
        "unknown"
#endif
        << "; hardware_threads=" << std::thread::hardware_concurrency() << "; jobs=" << workers;
    result.environment = env.str();
    return result;
}

nlohmann::ordered_json spec_json(const DistanceSpec& spec) {
    nlohmann::ordered_json j;
    j["metric"] = std::string(metric_name(spec.kind));
    j["p"] = spec.p ? nlohmann::ordered_json(*spec.p) : nlohmann::ordered_json(nullptr);
    return j;
}

std::string p_cell(const DistanceSpec& spec) {
    return spec.p ? detail::format_shortest(*spec.p) : std::string();
}

} // namespace

std::string_view mode_name(SweepMode mode) noexcept {
    return mode == SweepMode::PSweep ? "p-sweep" : "metric-comparison";
}

std::vector<double> default_p_grid() {
    return {1.0, 1.2, 1.34, 1.42, 1.45, 1.5, 1.523, 1.55, 1.56, 3.0};
}

std::vector<std::size_t> default_instance_sizes() {
    return {1000, 2000, 3000, 4000, 5097};
}

std::vector<DistanceSpec> default_comparison_metrics() {
    return {
        DistanceSpec::euclidean(),
        DistanceSpec::squared_euclidean(),
        DistanceSpec::city_block(),
        DistanceSpec::chebyshev(),
        DistanceSpec::minkowski(1.5),
        DistanceSpec::design_specification(default_dsd_p),
    };
}

std::string metric_label(const DistanceSpec& spec) {
    std::string out(metric_name(spec.kind));
    if (spec.p) {
        out += "(p=" + detail::format_shortest(*spec.p) + ")";
    }
    return out;
}

void validate_plan(const SweepPlan& plan, SweepMode mode, std::size_t dataset_size) {
    if (plan.instance_sizes.empty()) {
        throw std::invalid_argument("plan has no instance sizes");
    }
    for (std::size_t i = 0; i < plan.instance_sizes.size(); ++i) {
        const std::size_t n = plan.instance_sizes[i];
        if (n == 0) {
            throw std::invalid_argument("instance sizes must be positive");
        }
        if (n > dataset_size) {
            throw std::invalid_argument("instance size " + std::to_string(n) + " exceeds dataset size " +
                                        std::to_string(dataset_size));
        }
        if (i > 0 && n <= plan.instance_sizes[i - 1]) {
            throw std::invalid_argument("instance sizes must be strictly increasing");
        }
    }
    if (plan.base.k == 0) {
        throw std::invalid_argument("k must be at least 1");
    }
    if (plan.base.k > plan.instance_sizes.front()) {
        throw std::invalid_argument("k = " + std::to_string(plan.base.k) + " exceeds the smallest instance size " +
                                    std::to_string(plan.instance_sizes.front()));
    }
    if (plan.base.init == InitMethod::Explicit) {
        throw std::invalid_argument("sweeps do not support explicit initial centroids");
    }
    if (plan.base.max_iter == 0) {
        throw std::invalid_argument("max_iter must be at least 1");
    }
    if (!(plan.base.shift_tol >= 0.0) || !std::isfinite(plan.base.shift_tol)) {
        throw std::invalid_argument("shift_tol must be a finite non-negative number");
    }
    validate_policy(plan.policy);

    if (mode == SweepMode::PSweep) {
        if (plan.p_values.empty()) {
            throw std::invalid_argument("plan has no p values");
        }
        std::set<double> seen;
        for (double p : plan.p_values) {
            validate_spec(DistanceSpec::design_specification(p));
            if (!seen.insert(p).second) {
                throw std::invalid_argument("duplicate p value " + detail::format_shortest(p));
            }
        }
    } else {
        if (plan.metrics.empty()) {
            throw std::invalid_argument("plan has no metrics");
        }
        for (std::size_t i = 0; i < plan.metrics.size(); ++i) {
            validate_spec(plan.metrics[i]);
            for (std::size_t j = 0; j < i; ++j) {
                if (plan.metrics[j] == plan.metrics[i]) {
                    throw std::invalid_argument("duplicate metric " + metric_label(plan.metrics[i]));
                }
            }
        }
    }
}

SweepResult run_p_sweep(const SweepPlan& plan, const Dataset& dataset) {
    return run(plan, SweepMode::PSweep, dataset);
}

SweepResult run_metric_comparison(const SweepPlan& plan, const Dataset& dataset) {
    return run(plan, SweepMode::MetricComparison, dataset);
}

std::string sweep_to_csv(const SweepResult& result) {
    std::string out = report_csv_header(result.plan.base.k) + "\n";
    for (const auto& row : result.rows) {
        out += std::string(metric_name(row.metric.kind)) + ',' + p_cell(row.metric) + ',' +
               std::to_string(row.instance_size);
        for (std::size_t n : row.cluster_counts) {
            out += ',' + std::to_string(n);
        }
        out += ',' + detail::format_shortest(row.accuracy_pct) + ',' + detail::format_shortest(row.outlier_pct) + ',' +
               std::to_string(row.seed) + '\n';
    }
    return out;
}

std::string sweep_to_json(const SweepResult& result) {
    const auto& plan = result.plan;
    nlohmann::ordered_json doc;
    doc["mode"] = std::string(mode_name(result.mode));

    nlohmann::ordered_json p;
    p["p_values"] = plan.p_values;
    p["instance_sizes"] = plan.instance_sizes;
    auto metrics = nlohmann::ordered_json::array();
    for (const auto& m : plan.metrics) {
        metrics.push_back(spec_json(m));
    }
    p["metrics"] = std::move(metrics);
    p["k"] = plan.base.k;
    p["init"] = std::string(init_name(plan.base.init));
    p["seed"] = plan.base.seed;
    p["max_iter"] = plan.base.max_iter;
    p["shift_tol"] = plan.base.shift_tol;
    p["policy"] = to_string(plan.policy);
    p["jobs"] = plan.jobs;
    p["shuffle_seed"] = plan.shuffle_seed;
    p["dataset_source"] = plan.dataset_source;
    doc["plan"] = std::move(p);
    doc["environment"] = result.environment;

    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : result.rows) {
        auto r = spec_json(row.metric);
        r["instance_size"] = row.instance_size;
        r["cluster_counts"] = row.cluster_counts;
        r["clustered"] = row.clustered;
        r["accuracy_pct"] = row.accuracy_pct;
        r["outlier_pct"] = row.outlier_pct;
        r["iterations"] = row.iterations;
        r["converged"] = row.converged;
        r["sse"] = row.sse;
        r["seed"] = row.seed;
        r["wall_ms"] = row.wall_ms;
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

std::vector<FigureData> figure_data(const SweepResult& result) {
    if (result.rows.empty()) {
        throw std::invalid_argument("cannot emit figure data for an empty sweep result");
    }
    std::size_t largest = 0;
    for (const auto& row : result.rows) {
        largest = std::max(largest, row.instance_size);
    }
    std::vector<FigureData> out;
    if (result.mode == SweepMode::PSweep) {
        std::string fig3 = "p,accuracy_pct,outlier_pct\n";
        for (const auto& row : result.rows) {
            if (row.instance_size == largest) {
                fig3 += p_cell(row.metric) + ',' + detail::format_shortest(row.accuracy_pct) + ',' +
                        detail::format_shortest(row.outlier_pct) + '\n';
            }
        }
        out.push_back({"fig3.csv", std::move(fig3)});
    } else {
        std::string fig4 = "metric,outlier_pct\n";
        std::string fig5 = "metric,accuracy_pct\n";
        for (const auto& row : result.rows) {
            if (row.instance_size == largest) {
                fig4 += metric_label(row.metric) + ',' + detail::format_shortest(row.outlier_pct) + '\n';
                fig5 += metric_label(row.metric) + ',' + detail::format_shortest(row.accuracy_pct) + '\n';
            }
        }
        out.push_back({"fig4.csv", std::move(fig4)});
        out.push_back({"fig5.csv", std::move(fig5)});
    }
    return out;
}

std::vector<std::filesystem::path> emit_figure_data(const SweepResult& result, const std::filesystem::path& dir) {
    const auto figures = figure_data(result);
    std::vector<std::filesystem::path> written;
    for (const auto& fig : figures) {
        const auto path = dir / fig.name;
        detail::write_text_file(path, fig.content);
        written.push_back(path);
    }
    return written;
}

} // namespace dsdkm
