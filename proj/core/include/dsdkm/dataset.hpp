#ifndef DSDKM_DATASET_HPP
#define DSDKM_DATASET_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dsdkm/metrics.hpp"

namespace dsdkm {

/**
 * @brief An ordered collection of points with optional class labels.
 *
 * All points share one dimension. `labels` is either empty or has one entry
 * per point.
 */
struct Dataset {
    std::vector<FeatureVector> points;
    std::vector<std::string> labels;
    std::vector<std::string> attribute_names;
    std::string provenance;

    std::size_t size() const noexcept { return points.size(); }
    std::size_t dimension() const noexcept { return points.empty() ? 0 : points.front().size(); }
    bool has_labels() const noexcept { return !labels.empty(); }

    /// Throws std::invalid_argument if the structural invariants do not hold.
    void check() const;
};

struct CsvOptions {
    /// Header name of the optional label column.
    std::string label_column = "class";
};

/**
 * Reads a comma-separated file with a header row.
 *
 * Every column except the label column is parsed as a real number
 * (scientific notation accepted). Rows are numbered as in the file, header
 * being row 1. Bad cells are collected and reported together.
 */
Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options = {});

/// Parses CSV text that is already in memory. `source` is used in messages.
Dataset parse_csv(const std::string& text, const std::string& source, const CsvOptions& options = {});

/// Shortest round-trip float formatting; load_csv(save) reproduces every value exactly.
std::string dataset_to_csv(const Dataset& dataset);
void save_csv(const Dataset& dataset, const std::filesystem::path& path);

struct UniformRange {
    double low = 0.0;
    double high = 1.0;
};

struct NormalDist {
    double mean = 0.0;
    double sigma = 1.0;
};

using AttributeDist = std::variant<UniformRange, NormalDist>;

/// One generated class: a name, a sampling rule per attribute, and a row count.
struct ClassSpec {
    std::string name;
    std::vector<AttributeDist> attributes;
    std::size_t count = 0;
};

/**
 * Samples each class independently, labels rows with the class name, then
 * shuffles the rows. A pure function of (specs, seed) for a given standard
 * library.
 */
Dataset generate_synthetic(const std::vector<ClassSpec>& specs, std::uint64_t seed);

/**
 * Materials-style class specs: `classes` groups (polymer, ceramic, metal,
 * then class4, ...), `dims` attributes, `count` rows split as evenly as
 * possible. Attribute 0 is uniform over disjoint per-class bands inside
 * [4e4, 9e7]; the rest are normal with class means 10 sigma apart and raw
 * scales spanning 1e-2 to 1e6.
 */
std::vector<ClassSpec> material_specs(std::size_t classes, std::size_t dims, std::size_t count);

/// The 5097 x 25, three-class default.
std::vector<ClassSpec> default_material_specs();

/// Seeded Fisher-Yates permutation of rows (labels follow their points).
Dataset shuffle_rows(const Dataset& dataset, std::uint64_t seed);

/// First `n` rows. Throws if `n` exceeds the dataset size.
Dataset prefix(const Dataset& dataset, std::size_t n);

} // namespace dsdkm

#endif
