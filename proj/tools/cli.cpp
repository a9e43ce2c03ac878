#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <array>
#include <filesystem>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "dsdkm/dsdkm.hpp"

namespace dsdkm::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
    std::string subcommand;

    // gen
    std::size_t classes = 3;
    std::size_t dims = 25;
    std::size_t count = 5097;
    std::string output = "materials.csv";

    std::string input;
    std::string output_dir = ".";
    std::uint64_t seed = default_seed;
    std::optional<std::uint64_t> shuffle_seed;
    std::size_t k = 3;
    std::string metric = "dsd";
    std::optional<double> p;
    std::size_t max_iter = 100;
    double tol = 1e-9;
    std::string init = "kmeans++";
    std::string outlier_policy = "sigma";
    double outlier_c = 3.0;
    double outlier_q = 0.95;
    std::vector<std::size_t> instances;
    std::vector<double> p_values;
    std::vector<std::string> metrics;
    std::size_t jobs = 0;
    bool no_normalize = false;
};

std::string num(double v) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return ec == std::errc{} ? std::string(buf.data(), end) : std::string("nan");
}

template <class T>
std::string join(const std::vector<T>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        if constexpr (std::is_floating_point_v<T>) {
            out += num(values[i]);
        } else if constexpr (std::is_same_v<T, std::string>) {
            out += values[i];
        } else {
            out += std::to_string(values[i]);
        }
    }
    return out;
}

std::size_t default_jobs() {
    return std::max(1u, std::thread::hardware_concurrency());
}

OutlierPolicy make_policy(const Options& o) {
    OutlierPolicy policy;
    if (o.outlier_policy == "none") {
        policy = NoOutliers{};
    } else if (o.outlier_policy == "sigma") {
        policy = SigmaOutliers{o.outlier_c};
    } else if (o.outlier_policy == "quantile") {
        policy = QuantileOutliers{o.outlier_q};
    } else {
        throw std::invalid_argument("--outlier-policy must be none, sigma or quantile");
    }
    validate_policy(policy);
    return policy;
}

DistanceSpec make_spec(const std::string& name, std::optional<double> p) {
    DistanceSpec spec{parse_metric_kind(name), std::nullopt};
    if (takes_parameter(spec.kind)) {
        spec.p = p.value_or(default_dsd_p);
    } else if (p) {
        throw std::invalid_argument("--p is not accepted by metric " + name);
    }
    try {
        return validate_spec(spec);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("--p: ") + e.what());
    }
}

ClusteringConfig make_config(const Options& o) {
    ClusteringConfig config;
    config.k = o.k;
    config.seed = o.seed;
    config.max_iter = o.max_iter;
    config.shift_tol = o.tol;
    config.init = parse_init_method(o.init);
    if (config.init == InitMethod::Explicit) {
        throw std::invalid_argument("--init explicit is only available through the library API");
    }
    config.jobs = o.jobs;
    if (o.k == 0) {
        throw std::invalid_argument("--k must be at least 1");
    }
    if (o.max_iter == 0) {
        throw std::invalid_argument("--max-iter must be at least 1");
    }
    if (!(o.tol >= 0.0) || !std::isfinite(o.tol)) {
        throw std::invalid_argument("--tol must be a finite non-negative number");
    }
    return config;
}

// Every effective option, defaults included, as an argument list that re-parses to the same run.
std::vector<std::string> canonical_args(const Options& o) {
    std::vector<std::string> a{o.subcommand};
    auto add = [&](const std::string& flag, const std::string& value) {
        a.push_back(flag);
        a.push_back(value);
    };
    if (o.subcommand == "gen") {
        add("--classes", std::to_string(o.classes));
        add("--dims", std::to_string(o.dims));
        add("--count", std::to_string(o.count));
        add("--seed", std::to_string(o.seed));
        add("--output", o.output);
        return a;
    }
    add("--input", o.input);
    add("--output-dir", o.output_dir);
    add("--seed", std::to_string(o.seed));
    add("--k", std::to_string(o.k));
    add("--init", o.init);
    add("--max-iter", std::to_string(o.max_iter));
    add("--tol", num(o.tol));
    add("--outlier-policy", o.outlier_policy);
    add("--outlier-c", num(o.outlier_c));
    add("--outlier-q", num(o.outlier_q));
    add("--jobs", std::to_string(o.jobs));
    if (o.subcommand == "fit") {
        add("--metric", o.metric);
    }
    if (o.p) {
        add("--p", num(*o.p));
    }
    if (o.subcommand == "sweep" || o.subcommand == "compare") {
        add("--shuffle-seed", std::to_string(o.shuffle_seed.value_or(o.seed)));
        add("--instances", join(o.instances));
    }
    if (o.subcommand == "sweep") {
        add("--p-values", join(o.p_values));
    }
    if (o.subcommand == "compare") {
        add("--metrics", join(o.metrics));
    }
    if (o.no_normalize) {
        a.push_back("--no-normalize");
    }
    return a;
}

void write_manifest(const Options& o, const fs::path& path, const std::vector<fs::path>& outputs) {
    nlohmann::ordered_json doc;
    doc["tool"] = "dsdkm";
    doc["version"] = version;
    doc["subcommand"] = o.subcommand;
    doc["args"] = canonical_args(o);
    nlohmann::ordered_json opts;
    opts["seed"] = o.seed;
    if (o.subcommand == "gen") {
        opts["classes"] = o.classes;
        opts["dims"] = o.dims;
        opts["count"] = o.count;
        opts["output"] = o.output;
    } else {
        opts["input"] = o.input;
        opts["output_dir"] = o.output_dir;
        opts["k"] = o.k;
        opts["init"] = o.init;
        opts["max_iter"] = o.max_iter;
        opts["tol"] = o.tol;
        opts["outlier_policy"] = o.outlier_policy;
        opts["outlier_c"] = o.outlier_c;
        opts["outlier_q"] = o.outlier_q;
        opts["jobs"] = o.jobs;
        opts["normalize"] = !o.no_normalize;
        if (o.subcommand == "fit") {
            opts["metric"] = o.metric;
        }
        if (o.p) {
            opts["p"] = *o.p;
        }
        if (o.subcommand != "fit") {
            opts["shuffle_seed"] = o.shuffle_seed.value_or(o.seed);
            opts["instances"] = o.instances;
        }
        if (o.subcommand == "sweep") {
            opts["p_values"] = o.p_values;
        }
        if (o.subcommand == "compare") {
            opts["metrics"] = o.metrics;
        }
    }
    doc["options"] = std::move(opts);
    auto outs = nlohmann::ordered_json::array();
    for (const auto& p : outputs) {
        outs.push_back(p.string());
    }
    doc["outputs"] = std::move(outs);
    write_file(path, doc.dump(2) + "\n");
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw std::runtime_error("cannot create output directory '" + dir.string() + "'");
    }
}

// Loads, optionally shuffles, optionally normalizes. Stats are returned when normalized.
std::pair<Dataset, std::optional<FeatureStats>> prepare(const Options& o, std::optional<std::uint64_t> shuffle) {
    Dataset data = load_csv(o.input);
    if (shuffle) {
        data = shuffle_rows(data, *shuffle);
    }
    if (o.no_normalize) {
        return {std::move(data), std::nullopt};
    }
    auto [stats, points] = fit_transform(data.points);
    data.points = std::move(points);
    return {std::move(data), std::move(stats)};
}

int cmd_gen(Options& o, std::ostream& out) {
    if (o.count == 0) {
        throw std::invalid_argument("--count must be at least 1");
    }
    if (o.classes == 0) {
        throw std::invalid_argument("--classes must be at least 1");
    }
    if (o.dims == 0) {
        throw std::invalid_argument("--dims must be at least 1");
    }
    if (o.output.empty()) {
        throw std::invalid_argument("--output must name a file");
    }
    const Dataset data = generate_synthetic(material_specs(o.classes, o.dims, o.count), o.seed);
    const fs::path path(o.output);
    if (path.has_parent_path()) {
        ensure_dir(path.parent_path());
    }
    save_csv(data, path);
    fs::path manifest = path;
    manifest += ".manifest.json";
    write_manifest(o, manifest, {path});
    out << "wrote " << data.size() << " rows x " << data.dimension() << " attributes to " << path.string() << "\n";
    return 0;
}

int cmd_fit(Options& o, std::ostream& out) {
    ClusteringConfig config = make_config(o);
    config.metric = make_spec(o.metric, o.p);
    const OutlierPolicy policy = make_policy(o);
    auto [data, stats] = prepare(o, std::nullopt);
    if (config.k > data.size()) {
        throw std::invalid_argument("--k = " + std::to_string(config.k) + " exceeds dataset size " +
                                    std::to_string(data.size()));
    }

    const ClusterModel model = fit(data.points, config);
    const EvaluationReport report = evaluate(data.points, model, policy);

    const fs::path dir(o.output_dir);
    ensure_dir(dir);
    std::vector<fs::path> written{dir / "model.json", dir / "report.json", dir / "report.csv"};
    save_model(model, written[0]);
    save_report(report, written[1], ReportFormat::Json);
    save_report(report, written[2], ReportFormat::Csv);
    if (stats) {
        written.push_back(dir / "stats.json");
        save_stats(*stats, written.back());
    }
    write_manifest(o, dir / "manifest.json", written);

    out << report_csv_header(report.cluster_counts.size()) << "\n" << report_csv_row(report) << "\n";
    out << "cluster accuracy " << render_pct(report.accuracy_pct) << "% / outliers " << render_pct(report.outlier_pct)
        << "% (" << model.iterations_run << " iterations, " << (model.converged ? "converged" : "not converged")
        << ", seed " << model.seed << ")\n";
    return 0;
}

int cmd_sweep(Options& o, std::ostream& out, SweepMode mode) {
    SweepPlan plan;
    plan.base = make_config(o);
    plan.policy = make_policy(o);
    plan.jobs = o.jobs;
    plan.shuffle_seed = o.shuffle_seed.value_or(o.seed);
    plan.dataset_source = o.input;
    plan.instance_sizes = o.instances;
    if (mode == SweepMode::PSweep) {
        if (o.p) {
            throw std::invalid_argument("sweep takes --p-values, not --p");
        }
        plan.p_values = o.p_values;
    } else {
        plan.metrics.clear();
        for (const auto& name : o.metrics) {
            const auto kind = parse_metric_kind(name);
            std::optional<double> p;
            if (kind == MetricKind::DesignSpecification) {
                p = o.p.value_or(default_dsd_p);
            } else if (kind == MetricKind::Minkowski) {
                p = 1.5;
            }
            plan.metrics.push_back(validate_spec({kind, p}));
        }
    }

    auto [data, stats] = prepare(o, plan.shuffle_seed);
    validate_plan(plan, mode, data.size());

    const SweepResult result = mode == SweepMode::PSweep ? run_p_sweep(plan, data) : run_metric_comparison(plan, data);

    const fs::path dir(o.output_dir);
    ensure_dir(dir);
    std::vector<fs::path> written{dir / "sweep.csv", dir / "sweep.json"};
    save_report(result, written[0], ReportFormat::Csv);
    save_report(result, written[1], ReportFormat::Json);
    for (auto& p : emit_figure_data(result, dir)) {
        written.push_back(std::move(p));
    }
    if (stats) {
        written.push_back(dir / "stats.json");
        save_stats(*stats, written.back());
    }
    write_manifest(o, dir / "manifest.json", written);

    double total_ms = 0.0;
    for (const auto& row : result.rows) {
        total_ms += row.wall_ms;
    }
    out << mode_name(mode) << ": " << result.rows.size() << " cells, " << static_cast<long long>(total_ms)
        << " ms cell time, seed " << plan.base.seed << "\n";
    for (const auto& p : written) {
        out << "  " << p.string() << "\n";
    }
    return 0;
}

void add_model_flags(CLI::App* sub, Options& o) {
    sub->add_option("-i,--input", o.input, "Input CSV (header row, optional `class` column)")->required();
    sub->add_option("-o,--output-dir", o.output_dir, "Directory for output files")->capture_default_str();
    sub->add_option("--seed", o.seed, "Seed for initialization (and shuffling)")->capture_default_str();
    sub->add_option("--k", o.k, "Number of clusters")->capture_default_str();
    sub->add_option("--init", o.init, "Initialization: random or kmeans++")->capture_default_str();
    sub->add_option("--max-iter", o.max_iter, "Iteration cap")->capture_default_str();
    sub->add_option("--tol", o.tol, "Centroid shift tolerance")->capture_default_str();
    sub->add_option("--outlier-policy", o.outlier_policy, "none, sigma or quantile")->capture_default_str();
    sub->add_option("--outlier-c", o.outlier_c, "c for the sigma policy")->capture_default_str();
    sub->add_option("--outlier-q", o.outlier_q, "q for the quantile policy")->capture_default_str();
    sub->add_option("--jobs", o.jobs, "Worker threads (default: available processors)");
    sub->add_flag("--no-normalize", o.no_normalize, "Skip min-max normalization");
}

int run_manifest(const std::string& path, std::ostream& out, std::ostream& err);

int dispatch(Options& o, std::ostream& out) {
    if (o.jobs == 0) {
        o.jobs = default_jobs();
    }
    if (o.subcommand == "gen") {
        return cmd_gen(o, out);
    }
    if (o.subcommand == "fit") {
        if (takes_parameter(parse_metric_kind(o.metric)) && !o.p) {
            o.p = default_dsd_p;
        }
        return cmd_fit(o, out);
    }
    if (o.instances.empty()) {
        o.instances = default_instance_sizes();
    }
    if (o.subcommand == "sweep") {
        if (o.p_values.empty()) {
            o.p_values = default_p_grid();
        }
        return cmd_sweep(o, out, SweepMode::PSweep);
    }
    if (!o.p) {
        o.p = default_dsd_p;
    }
    if (o.metrics.empty()) {
        for (MetricKind kind : all_metric_kinds) {
            o.metrics.emplace_back(metric_name(kind));
        }
    }
    return cmd_sweep(o, out, SweepMode::MetricComparison);
}

int run_impl(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool allow_replay) {
    Options o;
    std::string manifest_path;

    CLI::App app{"dsdkm: k-means with pluggable distances, min-max normalization and experiment sweeps", "dsdkm"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(version));

    auto* gen = app.add_subcommand("gen", "Generate a synthetic materials-style dataset");
    gen->add_option("--classes", o.classes, "Number of classes")->capture_default_str();
    gen->add_option("--dims", o.dims, "Attributes per row")->capture_default_str();
    gen->add_option("--count", o.count, "Total rows")->capture_default_str();
    gen->add_option("--seed", o.seed, "Generator seed")->capture_default_str();
    gen->add_option("-o,--output", o.output, "Output CSV path")->capture_default_str();

    auto* fit_cmd = app.add_subcommand("fit", "Normalize, cluster and evaluate one dataset");
    add_model_flags(fit_cmd, o);
    fit_cmd->add_option("--metric", o.metric, "euclidean, sqeuclidean, cityblock, chebyshev, minkowski or dsd")
        ->capture_default_str();
    fit_cmd->add_option("--p", o.p, "Metric parameter (default 1.523)");

    auto* sweep_cmd = app.add_subcommand("sweep", "DSD p values x instance sizes");
    add_model_flags(sweep_cmd, o);
    sweep_cmd->add_option("--p-values", o.p_values, "Comma-separated p grid")->delimiter(',');
    sweep_cmd->add_option("--instances", o.instances, "Comma-separated prefix sizes")->delimiter(',');
    sweep_cmd->add_option("--shuffle-seed", o.shuffle_seed, "Row shuffle seed (default: --seed)");
    sweep_cmd->add_option("--p", o.p, "Not accepted; use --p-values");

    auto* compare_cmd = app.add_subcommand("compare", "Metric kinds x instance sizes");
    add_model_flags(compare_cmd, o);
    compare_cmd->add_option("--metrics", o.metrics, "Comma-separated metric kinds (default: all six)")->delimiter(',');
    compare_cmd->add_option("--instances", o.instances, "Comma-separated prefix sizes")->delimiter(',');
    compare_cmd->add_option("--shuffle-seed", o.shuffle_seed, "Row shuffle seed (default: --seed)");
    compare_cmd->add_option("--p", o.p, "DSD parameter for the comparison (default 1.523)");

    auto* replay = app.add_subcommand("replay", "Re-run the invocation recorded in a manifest.json");
    replay->add_option("manifest", manifest_path, "Path to manifest.json")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (replay->parsed()) {
            if (!allow_replay) {
                throw std::invalid_argument("a manifest cannot replay another replay");
            }
            return run_manifest(manifest_path, out, err);
        }
        o.subcommand = app.get_subcommands().front()->get_name();
        return dispatch(o, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int run_manifest(const std::string& path, std::ostream& out, std::ostream& err) {
    const auto doc = nlohmann::json::parse(read_file(path));
    const auto args = doc.at("args").get<std::vector<std::string>>();
    return run_impl(args, out, err, false);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return run_impl(args, out, err, true);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace dsdkm::cli
