#include "dsdkm/metrics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "oracles.hpp"

using namespace dsdkm;
using dsdkm::testing::random_vector;
using dsdkm::testing::reference_distance;
using dsdkm::testing::rel_err;

namespace {

const FeatureVector origin{0.0, 0.0};
const FeatureVector three_four{3.0, 4.0};

std::vector<DistanceSpec> every_kind() {
    return {DistanceSpec::euclidean(),       DistanceSpec::squared_euclidean(),
            DistanceSpec::city_block(),      DistanceSpec::chebyshev(),
            DistanceSpec::minkowski(1.0),    DistanceSpec::minkowski(2.7),
            DistanceSpec::design_specification(1.0), DistanceSpec::design_specification(1.523),
            DistanceSpec::design_specification(3.0)};
}

} // namespace

TEST(FeatureVector, RejectsEmptyAndNonFinite) {
    EXPECT_THROW(FeatureVector(std::vector<double>{}), std::invalid_argument);
    EXPECT_THROW(FeatureVector({1.0, std::nan("")}), std::invalid_argument);
    EXPECT_THROW(FeatureVector({INFINITY}), std::invalid_argument);
    EXPECT_NO_THROW(FeatureVector({0.0}));
}

TEST(ValidateSpec, AcceptsOperatingPoint) {
    const auto spec = DistanceSpec::design_specification(1.523);
    EXPECT_EQ(validate_spec(spec), spec);
    EXPECT_EQ(validate_spec(DistanceSpec::minkowski(2.0)), DistanceSpec::minkowski(2.0));
}

TEST(ValidateSpec, NamesViolatedBound) {
    try {
        validate_spec(DistanceSpec::design_specification(0.5));
        FAIL() << "expected rejection";
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("p below 1"), std::string::npos) << e.what();
    }
    try {
        validate_spec(DistanceSpec::design_specification(3.01));
        FAIL() << "expected rejection";
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("p above 3"), std::string::npos) << e.what();
    }
    EXPECT_THROW(validate_spec(DistanceSpec::minkowski(0.99)), std::invalid_argument);
    EXPECT_THROW(validate_spec(DistanceSpec::minkowski(NAN)), std::invalid_argument);
    EXPECT_THROW(validate_spec(DistanceSpec::design_specification(INFINITY)), std::invalid_argument);
    EXPECT_THROW(validate_spec({MetricKind::Euclidean, 2.0}), std::invalid_argument);
    EXPECT_THROW(validate_spec({MetricKind::DesignSpecification, std::nullopt}), std::invalid_argument);
    // Minkowski has no upper bound.
    EXPECT_NO_THROW(validate_spec(DistanceSpec::minkowski(64.0)));
}

TEST(MetricNames, RoundTrip) {
    for (MetricKind kind : all_metric_kinds) {
        EXPECT_EQ(parse_metric_kind(metric_name(kind)), kind);
    }
    EXPECT_EQ(metric_name(MetricKind::SquaredEuclidean), "sqeuclidean");
    EXPECT_EQ(metric_name(MetricKind::DesignSpecification), "dsd");
    EXPECT_THROW(parse_metric_kind("cosine"), std::invalid_argument);
}

TEST(Distance, ClosedFormsOnThreeFour) {
    EXPECT_DOUBLE_EQ(distance(DistanceSpec::euclidean(), origin, three_four), 5.0);
    EXPECT_DOUBLE_EQ(distance(DistanceSpec::city_block(), origin, three_four), 7.0);
    EXPECT_DOUBLE_EQ(distance(DistanceSpec::chebyshev(), origin, three_four), 4.0);
    EXPECT_DOUBLE_EQ(distance(DistanceSpec::squared_euclidean(), origin, three_four), 25.0);
    EXPECT_DOUBLE_EQ(distance(DistanceSpec::design_specification(3.0), origin, three_four), 25.0);
    EXPECT_DOUBLE_EQ(distance(DistanceSpec::design_specification(1.5), origin, three_four), 5.0);
}

TEST(Distance, DsdOperatingPointMatchesHighPrecisionOracle) {
    // 25^(1.523/3) evaluated with mpmath at 40 digits.
    constexpr double oracle = 5.124925356970033;
    const double got = distance(DistanceSpec::design_specification(1.523), origin, three_four);
    EXPECT_LE(rel_err(got, oracle), 1e-12);
    EXPECT_NEAR(got, 5.1249, 1e-3);
}

TEST(Distance, IdenticalPointsGiveZero) {
    const FeatureVector x{0.25, 0.5, 0.75};
    for (const auto& spec : every_kind()) {
        EXPECT_EQ(distance(spec, x, x), 0.0) << to_string(spec);
    }
}

TEST(Distance, DimensionMismatchNamesBoth) {
    try {
        distance(DistanceSpec::euclidean(), FeatureVector{1.0, 2.0}, FeatureVector{1.0, 2.0, 3.0});
        FAIL();
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find('2'), std::string::npos);
        EXPECT_NE(msg.find('3'), std::string::npos);
    }
}

TEST(Distance, AgreesWithExtendedPrecisionReference) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t n = 1 + trial % 25;
        const auto x = random_vector(rng, n);
        const auto y = random_vector(rng, n);
        for (const auto& spec : every_kind()) {
            const double got = distance(spec, x, y);
            const auto want = static_cast<double>(reference_distance(spec.kind, spec.p.value_or(0.0), x, y));
            ASSERT_LE(rel_err(got, want), 1e-13) << to_string(spec) << " n=" << n;
        }
    }
}

TEST(Distance, SymmetryIsExact) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t n = 1 + trial % 25;
        const auto x = random_vector(rng, n, -3.0, 3.0);
        const auto y = random_vector(rng, n, -3.0, 3.0);
        for (const auto& spec : every_kind()) {
            ASSERT_EQ(distance(spec, x, y), distance(spec, y, x)) << to_string(spec);
            ASSERT_GT(distance(spec, x, y), 0.0);
        }
    }
}

TEST(Distance, FamilyCoincidences) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 5000; ++trial) {
        const std::size_t n = 1 + trial % 25;
        const auto x = random_vector(rng, n);
        const auto y = random_vector(rng, n);
        ASSERT_LE(rel_err(distance(DistanceSpec::design_specification(3.0), x, y),
                          distance(DistanceSpec::squared_euclidean(), x, y)),
                  1e-12);
        ASSERT_LE(rel_err(distance(DistanceSpec::design_specification(1.5), x, y),
                          distance(DistanceSpec::euclidean(), x, y)),
                  1e-12);
        ASSERT_LE(rel_err(distance(DistanceSpec::minkowski(1.0), x, y), distance(DistanceSpec::city_block(), x, y)),
                  1e-12);
        ASSERT_LE(rel_err(distance(DistanceSpec::minkowski(2.0), x, y), distance(DistanceSpec::euclidean(), x, y)),
                  1e-12);
    }
}

TEST(Distance, ChebyshevIsTheMinkowskiLimit) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 5000; ++trial) {
        const std::size_t n = 1 + trial % 25;
        const auto x = random_vector(rng, n);
        const auto y = random_vector(rng, n);
        const double cheb = distance(DistanceSpec::chebyshev(), x, y);
        const double mink = distance(DistanceSpec::minkowski(64.0), x, y);
        ASSERT_LE(std::abs(mink - cheb), 0.05 * cheb);
        ASSERT_GE(mink, cheb * (1.0 - 1e-12));
    }
}

TEST(Distance, ScaleCovariance) {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> scale(0.1, 10.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t n = 1 + trial % 25;
        const auto x = random_vector(rng, n);
        const auto y = random_vector(rng, n);
        const double a = scale(rng);
        std::vector<double> ax(x), ay(y);
        for (std::size_t i = 0; i < n; ++i) {
            ax[i] *= a;
            ay[i] *= a;
        }
        for (const auto& spec : every_kind()) {
            double q = 1.0;
            if (spec.kind == MetricKind::SquaredEuclidean) {
                q = 2.0;
            } else if (spec.kind == MetricKind::DesignSpecification) {
                q = 2.0 * *spec.p / 3.0;
            }
            ASSERT_LE(rel_err(distance(spec, ax, ay), std::pow(a, q) * distance(spec, x, y)), 1e-12)
                << to_string(spec);
        }
    }
}

TEST(Distance, TriangleInequalityWhereItHolds) {
    const std::vector<DistanceSpec> metrics = {
        DistanceSpec::euclidean(),  DistanceSpec::city_block(),
        DistanceSpec::chebyshev(),  DistanceSpec::minkowski(1.0),
        DistanceSpec::minkowski(3.5), DistanceSpec::design_specification(1.0),
        DistanceSpec::design_specification(1.2), DistanceSpec::design_specification(1.5)};
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t n = 1 + trial % 25;
        const auto x = random_vector(rng, n);
        const auto y = random_vector(rng, n);
        const auto z = random_vector(rng, n);
        for (const auto& s : metrics) {
            ASSERT_LE(distance(s, x, z), (distance(s, x, y) + distance(s, y, z)) * (1.0 + 1e-12)) << to_string(s);
        }
    }
}

TEST(Distance, TriangleCounterexamples) {
    const FeatureVector a{0.0}, b{1.0}, c{2.0};
    auto violated = [&](const DistanceSpec& s) { return distance(s, a, c) > distance(s, a, b) + distance(s, b, c); };
    // 4 > 1 + 1
    EXPECT_TRUE(violated(DistanceSpec::squared_euclidean()));
    // 2^(2p/3) > 2 whenever p > 1.5
    EXPECT_TRUE(violated(DistanceSpec::design_specification(1.523)));
    EXPECT_TRUE(violated(DistanceSpec::design_specification(1.51)));
    EXPECT_TRUE(violated(DistanceSpec::design_specification(3.0)));
    EXPECT_FALSE(violated(DistanceSpec::design_specification(1.5)));
    EXPECT_DOUBLE_EQ(distance(DistanceSpec::design_specification(3.0), a, c), 4.0);
}

TEST(PairwiseDistances, MatchesScalarKernelBitwise) {
    std::mt19937_64 rng(29);
    std::vector<FeatureVector> points, centers;
    for (int i = 0; i < 17; ++i) points.emplace_back(random_vector(rng, 6));
    for (int j = 0; j < 4; ++j) centers.emplace_back(random_vector(rng, 6));
    for (const auto& spec : every_kind()) {
        const auto m = pairwise_distances(spec, points, centers);
        ASSERT_EQ(m.rows, 17u);
        ASSERT_EQ(m.cols, 4u);
        for (std::size_t i = 0; i < m.rows; ++i) {
            for (std::size_t j = 0; j < m.cols; ++j) {
                ASSERT_EQ(m(i, j), distance(spec, points[i], centers[j]));
            }
        }
    }
}

TEST(PairwiseDistances, SmallCases) {
    const std::vector<FeatureVector> one{three_four};
    const auto same = pairwise_distances(DistanceSpec::euclidean(), one, one);
    EXPECT_EQ(same.data, std::vector<double>{0.0});

    const std::vector<FeatureVector> o{origin};
    EXPECT_EQ(pairwise_distances(DistanceSpec::euclidean(), o, one).data, std::vector<double>{5.0});

    const auto empty = pairwise_distances(DistanceSpec::euclidean(), std::vector<FeatureVector>{}, one);
    EXPECT_EQ(empty.rows, 0u);
    EXPECT_TRUE(empty.data.empty());

    const std::vector<FeatureVector> wrong{FeatureVector{1.0}};
    EXPECT_THROW(pairwise_distances(DistanceSpec::euclidean(), wrong, one), std::invalid_argument);
}
