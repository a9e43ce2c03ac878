#include "dsdkm/normalize.hpp"

#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

#include "oracles.hpp"

using namespace dsdkm;

TEST(FitStats, Extremes) {
    const std::vector<FeatureVector> two{FeatureVector{0.0}, FeatureVector{10.0}};
    const auto s = fit_stats(two);
    EXPECT_EQ(s.min(), std::vector<double>{0.0});
    EXPECT_EQ(s.max(), std::vector<double>{10.0});

    const std::vector<FeatureVector> one{FeatureVector{5.0}};
    const auto d = fit_stats(one);
    EXPECT_EQ(d.min(), d.max());
    EXPECT_TRUE(d.degenerate(0));
}

TEST(FitStats, ComponentwiseScan) {
    const std::vector<FeatureVector> data{{1.0, 9.0}, {3.0, 2.0}, {0.0, 4.0}};
    const auto s = fit_stats(data);
    EXPECT_EQ(s.min(), (std::vector<double>{0.0, 2.0}));
    EXPECT_EQ(s.max(), (std::vector<double>{3.0, 9.0}));
}

TEST(FitStats, Errors) {
    EXPECT_THROW(fit_stats(std::vector<FeatureVector>{}), std::invalid_argument);
    const std::vector<FeatureVector> ragged{{1.0, 2.0}, FeatureVector{1.0}};
    EXPECT_THROW(fit_stats(ragged), std::invalid_argument);
    EXPECT_THROW(FeatureStats({1.0}, {0.0}), std::invalid_argument);
    EXPECT_THROW(FeatureStats({1.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST(Transform, PointValues) {
    const FeatureStats s({0.0, 7.0}, {10.0, 7.0});
    EXPECT_EQ(transform(s, FeatureVector{0.0, 7.0}), (FeatureVector{0.0, 0.0}));
    EXPECT_EQ(transform(s, FeatureVector{10.0, 7.0}), (FeatureVector{1.0, 0.0}));
    EXPECT_EQ(transform(s, FeatureVector{5.0, 7.0}), (FeatureVector{0.5, 0.0}));
    // No clamping outside the fitted range.
    EXPECT_EQ(transform(s, FeatureVector{20.0, 9.0}), (FeatureVector{2.0, 0.0}));
    EXPECT_THROW(transform(s, FeatureVector{1.0}), std::invalid_argument);
}

TEST(FitTransform, KnownDatasets) {
    {
        const std::vector<FeatureVector> d{FeatureVector{0.0}, FeatureVector{10.0}};
        auto [s, out] = fit_transform(d);
        EXPECT_EQ(out, (std::vector<FeatureVector>{FeatureVector{0.0}, FeatureVector{1.0}}));
    }
    {
        const std::vector<FeatureVector> d{FeatureVector{5.0}};
        auto [s, out] = fit_transform(d);
        EXPECT_EQ(out, (std::vector<FeatureVector>{FeatureVector{0.0}}));
    }
    {
        const std::vector<FeatureVector> d{{1.0, 9.0}, {3.0, 2.0}, {0.0, 4.0}};
        auto [s, out] = fit_transform(d);
        ASSERT_EQ(out.size(), 3u);
        EXPECT_DOUBLE_EQ(out[0][0], 1.0 / 3.0);
        EXPECT_DOUBLE_EQ(out[0][1], 1.0);
        EXPECT_DOUBLE_EQ(out[1][0], 1.0);
        EXPECT_DOUBLE_EQ(out[1][1], 0.0);
        EXPECT_DOUBLE_EQ(out[2][0], 0.0);
        EXPECT_DOUBLE_EQ(out[2][1], 2.0 / 7.0);
    }
}

TEST(FitTransform, RangeOrderAndInverse) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> exponent(-3.0, 8.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + trial % 7;
        std::vector<FeatureVector> data;
        for (int r = 0; r < 40; ++r) {
            std::vector<double> v(n);
            for (auto& x : v) x = std::pow(10.0, exponent(rng));
            data.emplace_back(std::move(v));
        }
        auto [stats, out] = fit_transform(data);
        EXPECT_EQ(transform(stats, FeatureVector(stats.min())), FeatureVector(std::vector<double>(n, 0.0)));
        EXPECT_EQ(transform(stats, FeatureVector(stats.max())), FeatureVector(std::vector<double>(n, 1.0)));
        for (std::size_t r = 0; r < data.size(); ++r) {
            const auto back = inverse_transform(stats, out[r]);
            for (std::size_t a = 0; a < n; ++a) {
                ASSERT_GE(out[r][a], 0.0);
                ASSERT_LE(out[r][a], 1.0);
                ASSERT_LE(dsdkm::testing::rel_err(back[a], data[r][a]), 1e-12);
                for (std::size_t q = 0; q < data.size(); ++q) {
                    if (data[r][a] <= data[q][a]) {
                        ASSERT_LE(out[r][a], out[q][a]);
                    }
                }
            }
        }
    }
}

TEST(StatsJson, RoundTripAndSchema) {
    const FeatureStats s({0.1, -3.0, 7.0}, {0.30000000000000004, 2.5e8, 7.0});
    const std::string text = stats_to_json(s);
    EXPECT_NE(text.find("\"min\""), std::string::npos);
    EXPECT_NE(text.find("\"max\""), std::string::npos);
    EXPECT_EQ(stats_from_json(text), s);
    EXPECT_THROW(stats_from_json(R"({"min":[1,2],"max":[3]})"), std::invalid_argument);
    EXPECT_THROW(stats_from_json("not json"), std::invalid_argument);
}
