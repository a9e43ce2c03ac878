#include "dsdkm/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include "text_io.hpp"

namespace dsdkm {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            cells.push_back(trim(line.substr(start)));
            break;
        }
        cells.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return cells;
}

// Whole-cell parse; rejects thousands separators, trailing junk and non-finite values.
std::optional<double> parse_number(std::string_view cell) {
    if (cell.empty()) {
        return std::nullopt;
    }
    if (cell.front() == '+') {
        cell.remove_prefix(1);
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

void check_spec(const ClassSpec& spec, std::size_t dims) {
    if (spec.attributes.size() != dims) {
        throw std::invalid_argument("class '" + spec.name + "' has " + std::to_string(spec.attributes.size()) +
                                    " attributes, expected " + std::to_string(dims));
    }
    for (std::size_t a = 0; a < dims; ++a) {
        const auto where = "class '" + spec.name + "' attribute " + std::to_string(a);
        if (const auto* u = std::get_if<UniformRange>(&spec.attributes[a])) {
            if (!std::isfinite(u->low) || !std::isfinite(u->high) || u->low > u->high) {
                throw std::invalid_argument(where + ": uniform range needs finite low <= high");
            }
        } else {
            const auto& n = std::get<NormalDist>(spec.attributes[a]);
            if (!std::isfinite(n.mean) || !std::isfinite(n.sigma) || !(n.sigma > 0.0)) {
                throw std::invalid_argument(where + ": normal needs finite mean and sigma > 0");
            }
        }
    }
}

std::string class_name(std::size_t c) {
    static const char* const names[] = {"polymer", "ceramic", "metal"};
    return c < 3 ? names[c] : "class" + std::to_string(c + 1);
}

} // namespace

void Dataset::check() const {
    if (points.empty()) {
        throw std::invalid_argument("dataset is empty");
    }
    const std::size_t n = points.front().size();
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != n) {
            throw std::invalid_argument("ragged dataset at row index " + std::to_string(i));
        }
    }
    if (!labels.empty() && labels.size() != points.size()) {
        throw std::invalid_argument("labels must cover every point");
    }
    if (!attribute_names.empty() && attribute_names.size() != n) {
        throw std::invalid_argument("attribute name count does not match dimension");
    }
}

Dataset parse_csv(const std::string& text, const std::string& source, const CsvOptions& options) {
    std::vector<std::string_view> lines;
    {
        std::string_view rest(text);
        while (!rest.empty()) {
            auto nl = rest.find('\n');
            auto line = rest.substr(0, nl);
            if (!line.empty() && line.back() == '\r') {
                line.remove_suffix(1);
            }
            lines.push_back(line);
            if (nl == std::string_view::npos) {
                break;
            }
            rest.remove_prefix(nl + 1);
        }
    }
    // Drop trailing blank lines only; blank lines in the middle are errors.
    while (!lines.empty() && trim(lines.back()).empty()) {
        lines.pop_back();
    }
    if (lines.empty()) {
        throw std::invalid_argument(source + ": missing header row");
    }
    if (lines.front().starts_with("\xEF\xBB\xBF")) {
        lines.front().remove_prefix(3);
    }

    const auto header = split_commas(lines.front());
    std::optional<std::size_t> label_col;
    Dataset out;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == options.label_column) {
            if (label_col) {
                throw std::invalid_argument(source + ": duplicate label column '" + options.label_column + "'");
            }
            label_col = c;
        } else {
            out.attribute_names.emplace_back(header[c]);
        }
    }
    if (out.attribute_names.empty()) {
        throw std::invalid_argument(source + ": no attribute columns");
    }
    if (lines.size() < 2) {
        throw std::invalid_argument(source + ": no data rows");
    }

    std::vector<std::string> problems;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const std::size_t row_number = li + 1;
        const auto cells = split_commas(lines[li]);
        if (cells.size() != header.size()) {
            problems.push_back("row " + std::to_string(row_number) + ": expected " + std::to_string(header.size()) +
                               " cells, found " + std::to_string(cells.size()));
            continue;
        }
        std::vector<double> values;
        values.reserve(out.attribute_names.size());
        std::string label;
        bool ok = true;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (label_col && c == *label_col) {
                label = std::string(cells[c]);
                continue;
            }
            if (auto v = parse_number(cells[c])) {
                values.push_back(*v);
            } else {
                problems.push_back("row " + std::to_string(row_number) + ": non-numeric value '" +
                                   std::string(cells[c]) + "' in column '" + std::string(header[c]) + "'");
                ok = false;
                break;
            }
        }
        if (ok) {
            out.points.emplace_back(std::move(values));
            if (label_col) {
                out.labels.push_back(std::move(label));
            }
        }
    }
    if (!problems.empty()) {
        std::ostringstream msg;
        msg << source << ": " << problems.size() << " bad row(s)";
        const std::size_t shown = std::min<std::size_t>(problems.size(), 10);
        for (std::size_t i = 0; i < shown; ++i) {
            msg << "\n  " << problems[i];
        }
        if (shown < problems.size()) {
            msg << "\n  ...";
        }
        throw std::invalid_argument(msg.str());
    }
    out.provenance = source;
    out.check();
    return out;
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
    if (!std::filesystem::exists(path)) {
        throw std::runtime_error("input file '" + path.string() + "' does not exist");
    }
    return parse_csv(detail::read_text_file(path), path.string(), options);
}

std::string dataset_to_csv(const Dataset& dataset) {
    dataset.check();
    std::string out;
    const std::size_t n = dataset.dimension();
    for (std::size_t a = 0; a < n; ++a) {
        if (a > 0) {
            out += ',';
        }
        out += dataset.attribute_names.empty() ? "a" + std::to_string(a + 1) : dataset.attribute_names[a];
    }
    if (dataset.has_labels()) {
        out += ",class";
    }
    out += '\n';
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        const auto& p = dataset.points[i];
        for (std::size_t a = 0; a < n; ++a) {
            if (a > 0) {
                out += ',';
            }
            out += detail::format_shortest(p[a]);
        }
        if (dataset.has_labels()) {
            out += ',';
            out += dataset.labels[i];
        }
        out += '\n';
    }
    return out;
}

void save_csv(const Dataset& dataset, const std::filesystem::path& path) {
    detail::write_text_file(path, dataset_to_csv(dataset));
}

Dataset generate_synthetic(const std::vector<ClassSpec>& specs, std::uint64_t seed) {
    if (specs.empty()) {
        throw std::invalid_argument("at least one class spec is required");
    }
    const std::size_t dims = specs.front().attributes.size();
    if (dims == 0) {
        throw std::invalid_argument("class specs need at least one attribute");
    }
    std::size_t total = 0;
    for (const auto& spec : specs) {
        check_spec(spec, dims);
        total += spec.count;
    }
    if (total == 0) {
        throw std::invalid_argument("total point count must be at least 1");
    }

    std::mt19937_64 rng(seed);
    Dataset out;
    out.points.reserve(total);
    out.labels.reserve(total);
    constexpr double lim = std::numeric_limits<double>::max();
    for (const auto& spec : specs) {
        for (std::size_t r = 0; r < spec.count; ++r) {
            std::vector<double> row(dims);
            for (std::size_t a = 0; a < dims; ++a) {
                if (const auto* u = std::get_if<UniformRange>(&spec.attributes[a])) {
                    row[a] = u->low == u->high ? u->low : std::uniform_real_distribution<double>(u->low, u->high)(rng);
                } else {
                    const auto& n = std::get<NormalDist>(spec.attributes[a]);
                    const double v = std::normal_distribution<double>(n.mean, n.sigma)(rng);
                    row[a] = std::isnan(v) ? n.mean : std::clamp(v, -lim, lim);
                }
            }
            out.points.emplace_back(std::move(row));
            out.labels.push_back(spec.name);
        }
    }
    for (std::size_t a = 0; a < dims; ++a) {
        out.attribute_names.push_back("a" + std::to_string(a + 1));
    }

    std::vector<std::size_t> order(total);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    Dataset shuffled;
    shuffled.attribute_names = std::move(out.attribute_names);
    shuffled.points.reserve(total);
    shuffled.labels.reserve(total);
    for (std::size_t i : order) {
        shuffled.points.push_back(out.points[i]);
        shuffled.labels.push_back(out.labels[i]);
    }
    std::ostringstream prov;
    prov << "synthetic(classes=" << specs.size() << ", dims=" << dims << ", count=" << total << ", seed=" << seed << ")";
    shuffled.provenance = prov.str();
    return shuffled;
}

std::vector<ClassSpec> material_specs(std::size_t classes, std::size_t dims, std::size_t count) {
    if (classes == 0) {
        throw std::invalid_argument("classes must be at least 1");
    }
    if (dims == 0) {
        throw std::invalid_argument("dims must be at least 1");
    }
    constexpr double band_low = 4e4;
    constexpr double band_high = 9e7;
    const double band = (band_high - band_low) / static_cast<double>(classes);

    std::vector<ClassSpec> specs(classes);
    for (std::size_t c = 0; c < classes; ++c) {
        auto& spec = specs[c];
        spec.name = class_name(c);
        spec.count = count / classes + (c < count % classes ? 1 : 0);
        const double lo = band_low + band * static_cast<double>(c);
        spec.attributes.push_back(UniformRange{lo + 0.05 * band, lo + 0.95 * band});
        for (std::size_t a = 1; a < dims; ++a) {
            const double scale = std::pow(10.0, static_cast<double>(a % 9) - 2.0);
            // Neighbouring class means sit 10 sigma apart.
            spec.attributes.push_back(NormalDist{scale * (10.0 + 10.0 * static_cast<double>(c)), scale});
        }
    }
    return specs;
}

std::vector<ClassSpec> default_material_specs() {
    return material_specs(3, 25, 5097);
}

Dataset shuffle_rows(const Dataset& dataset, std::uint64_t seed) {
    std::vector<std::size_t> order(dataset.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    Dataset out;
    out.attribute_names = dataset.attribute_names;
    out.provenance = dataset.provenance;
    out.points.reserve(dataset.size());
    for (std::size_t i : order) {
        out.points.push_back(dataset.points[i]);
        if (dataset.has_labels()) {
            out.labels.push_back(dataset.labels[i]);
        }
    }
    return out;
}

Dataset prefix(const Dataset& dataset, std::size_t n) {
    if (n > dataset.size()) {
        throw std::invalid_argument("prefix of " + std::to_string(n) + " rows requested from a dataset of " +
                                    std::to_string(dataset.size()));
    }
    Dataset out;
    out.attribute_names = dataset.attribute_names;
    out.provenance = dataset.provenance;
    out.points.assign(dataset.points.begin(), dataset.points.begin() + static_cast<std::ptrdiff_t>(n));
    if (dataset.has_labels()) {
        out.labels.assign(dataset.labels.begin(), dataset.labels.begin() + static_cast<std::ptrdiff_t>(n));
    }
    return out;
}

} // namespace dsdkm
