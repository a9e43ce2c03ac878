#include "dsdkm/dataset.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>

#include "dsdkm/io.hpp"
#include "dsdkm/kmeans.hpp"
#include "dsdkm/normalize.hpp"
#include "oracles.hpp"

using namespace dsdkm;
namespace fs = std::filesystem;

namespace {

class TempDir : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("dsdkm_dataset_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path write(const std::string& name, const std::string& text) {
        const auto p = dir_ / name;
        std::ofstream(p) << text;
        return p;
    }

    fs::path dir_;
};

std::string message_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

} // namespace

using LoadCsv = TempDir;

TEST_F(LoadCsv, ParsesAttributes) {
    const auto d = load_csv(write("a.csv", "x,y\n1,2\n3.5,-4e3\n"));
    EXPECT_EQ(d.size(), 2u);
    EXPECT_EQ(d.dimension(), 2u);
    EXPECT_EQ(d.points[1], (FeatureVector{3.5, -4000.0}));
    EXPECT_FALSE(d.has_labels());
    EXPECT_EQ(d.attribute_names, (std::vector<std::string>{"x", "y"}));
    EXPECT_NE(d.provenance.find("a.csv"), std::string::npos);
}

TEST_F(LoadCsv, LabelColumnIsNotAnAttribute) {
    const auto d = load_csv(write("b.csv", "x,y,class\r\n1,2,metal\r\n3,4,polymer\r\n"));
    EXPECT_EQ(d.dimension(), 2u);
    EXPECT_EQ(d.labels, (std::vector<std::string>{"metal", "polymer"}));
}

TEST_F(LoadCsv, NamesBadRow) {
    const auto p = write("c.csv", "x,y\n1,abc\n");
    const auto msg = message_of([&] { load_csv(p); });
    EXPECT_NE(msg.find("row 2"), std::string::npos) << msg;
}

TEST_F(LoadCsv, ReportsEveryBadRow) {
    const auto p = write("d.csv", "x,y\n1,2\n1,\n5,6\n1,2,3\n7,1 000\n");
    const auto msg = message_of([&] { load_csv(p); });
    EXPECT_NE(msg.find("row 3"), std::string::npos) << msg;
    EXPECT_NE(msg.find("row 5"), std::string::npos) << msg;
    EXPECT_NE(msg.find("row 6"), std::string::npos) << msg;
    EXPECT_EQ(msg.find("row 4"), std::string::npos) << msg;
}

TEST_F(LoadCsv, Errors) {
    EXPECT_THROW(load_csv(dir_ / "missing.csv"), std::runtime_error);
    EXPECT_THROW(load_csv(write("e.csv", "")), std::invalid_argument);
    EXPECT_THROW(load_csv(write("f.csv", "x,y\n")), std::invalid_argument);
    EXPECT_THROW(load_csv(write("g.csv", "x\nnan\n")), std::invalid_argument);
    EXPECT_THROW(load_csv(write("h.csv", "x\n1_000\n")), std::invalid_argument);
}

TEST_F(LoadCsv, SaveLoadRoundTripIsExact) {
    const Dataset d = generate_synthetic(material_specs(3, 6, 90), 5);
    const auto p = dir_ / "rt.csv";
    save_report(d, p);
    const auto back = load_csv(p);
    EXPECT_EQ(back.points, d.points);
    EXPECT_EQ(back.labels, d.labels);
    EXPECT_EQ(back.attribute_names, d.attribute_names);
}

TEST_F(LoadCsv, WriteFailureNamesPath) {
    const auto blocker = write("blocker", "x");
    const auto target = blocker / "out.csv";
    const Dataset d = generate_synthetic(material_specs(1, 1, 1), 1);
    const auto msg = message_of([&] { save_csv(d, target); });
    EXPECT_NE(msg.find(target.string()), std::string::npos) << msg;
}

TEST(GenerateSynthetic, ClassCountsAreConserved) {
    auto specs = material_specs(3, 4, 30);
    specs[1].count = 0;
    const auto d = generate_synthetic(specs, 9);
    std::map<std::string, std::size_t> seen;
    for (const auto& l : d.labels) ++seen[l];
    EXPECT_EQ(seen["polymer"], specs[0].count);
    EXPECT_EQ(seen.count("ceramic"), 0u);
    EXPECT_EQ(seen["metal"], specs[2].count);
    EXPECT_EQ(d.size(), specs[0].count + specs[2].count);
}

TEST(GenerateSynthetic, DeterministicInSeed) {
    const auto specs = default_material_specs();
    EXPECT_EQ(dataset_to_csv(generate_synthetic(specs, 42)), dataset_to_csv(generate_synthetic(specs, 42)));
    EXPECT_NE(dataset_to_csv(generate_synthetic(specs, 42)), dataset_to_csv(generate_synthetic(specs, 43)));
}

TEST(GenerateSynthetic, DefaultShape) {
    const auto d = generate_synthetic(default_material_specs(), 42);
    EXPECT_EQ(d.size(), 5097u);
    EXPECT_EQ(d.dimension(), 25u);
    const auto stats = fit_stats(d.points);
    EXPECT_GE(stats.min()[0], 4e4);
    EXPECT_LE(stats.max()[0], 9e7);
    // Raw attribute scales span many orders of magnitude.
    double lo = 1e300, hi = 0;
    for (std::size_t a = 0; a < 25; ++a) {
        lo = std::min(lo, stats.max()[a]);
        hi = std::max(hi, stats.max()[a]);
    }
    EXPECT_GT(hi / lo, 1e6);
}

TEST(GenerateSynthetic, RejectsBadSpecs) {
    EXPECT_THROW(generate_synthetic({}, 1), std::invalid_argument);
    EXPECT_THROW(generate_synthetic({{"a", {UniformRange{2.0, 1.0}}, 3}}, 1), std::invalid_argument);
    EXPECT_THROW(generate_synthetic({{"a", {NormalDist{0.0, 0.0}}, 3}}, 1), std::invalid_argument);
    EXPECT_THROW(generate_synthetic({{"a", {NormalDist{0.0, 1.0}}, 0}}, 1), std::invalid_argument);
    EXPECT_THROW(generate_synthetic({{"a", {NormalDist{0.0, 1.0}}, 3}, {"b", {}, 3}}, 1), std::invalid_argument);
}

TEST(GenerateSynthetic, SeparatedClassesAreRecoveredByKMeans) {
    const auto d = generate_synthetic(default_material_specs(), 42);
    auto [stats, points] = fit_transform(d.points);
    ClusteringConfig config;
    config.k = 3;
    config.metric = DistanceSpec::euclidean();
    const auto model = fit(points, config);
    EXPECT_GE(dsdkm::testing::purity(model.assignments, d.labels), 0.99);
}

TEST(NormalizationMotivation, RawScaleDominatesDistances) {
    // Un-normalized, the largest-scale attribute decides nearly every distance.
    const auto d = generate_synthetic(material_specs(3, 5, 60), 3);
    const auto& a = d.points[0];
    const auto& b = d.points[1];
    const double full = distance(DistanceSpec::euclidean(), a, b);
    const double only_big = std::abs(a[0] - b[0]);
    EXPECT_GT(only_big / full, 0.99);
}

TEST(Prefix, NestsAndBounds) {
    const auto d = generate_synthetic(material_specs(3, 2, 50), 1);
    const auto p10 = prefix(d, 10);
    const auto p20 = prefix(d, 20);
    for (std::size_t i = 0; i < 10; ++i) {
        EXPECT_EQ(p10.points[i], p20.points[i]);
        EXPECT_EQ(p10.labels[i], p20.labels[i]);
    }
    EXPECT_THROW(prefix(d, 51), std::invalid_argument);
}

TEST(ShuffleRows, PermutesWithLabels) {
    const auto d = generate_synthetic(material_specs(3, 2, 50), 1);
    const auto s = shuffle_rows(d, 77);
    ASSERT_EQ(s.size(), d.size());
    std::multimap<std::string, std::string> before, after;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const auto key = std::to_string(d.points[i][0]) + "/" + std::to_string(d.points[i][1]);
        before.emplace(key, d.labels[i]);
        const auto key2 = std::to_string(s.points[i][0]) + "/" + std::to_string(s.points[i][1]);
        after.emplace(key2, s.labels[i]);
    }
    EXPECT_EQ(before, after);
    EXPECT_EQ(dataset_to_csv(shuffle_rows(d, 77)), dataset_to_csv(s));
}
