#include <cmath>

#include <gtest/gtest.h>

#include "coordination/dsbs.hpp"
#include "coordination/info.hpp"
#include "coordination/wyner.hpp"
#include "oracles.hpp"

namespace coordination {
namespace {

const Axes kXY{Axis::X, Axis::Y};

TEST(Entropy, Examples) {
    EXPECT_DOUBLE_EQ(entropy(Pmf::uniform(2)), 1.0);
    EXPECT_EQ(entropy(Pmf::point_mass(3, 1)), 0.0);
    EXPECT_NEAR(entropy(Pmf{0.1, 0.9}), 0.468995593589281, 1e-15);
    EXPECT_NEAR(entropy(Pmf::uniform(7)), std::log2(7.0), 1e-14);
}

TEST(Entropy, Binary) {
    EXPECT_EQ(binary_entropy(0.5), 1.0);
    EXPECT_EQ(binary_entropy(0.0), 0.0);
    EXPECT_EQ(binary_entropy(1.0), 0.0);
    EXPECT_NEAR(binary_entropy(0.1), 0.468995593589281, 1e-15);
    EXPECT_THROW(binary_entropy(-1e-3), std::invalid_argument);
    EXPECT_THROW(binary_entropy(1.001), std::invalid_argument);
}

TEST(Entropy, InverseBinary) {
    EXPECT_NEAR(inverse_binary_entropy(1.0), 0.5, 1e-12);
    EXPECT_EQ(inverse_binary_entropy(0.0), 0.0);
    EXPECT_NEAR(inverse_binary_entropy(0.468995593589281), 0.1, 1e-12);
    EXPECT_THROW(inverse_binary_entropy(1.5), std::invalid_argument);
    EXPECT_THROW(inverse_binary_entropy(-0.1), std::invalid_argument);
}

TEST(Entropy, InverseBinaryRoundTripGrid) {
    for (int i = 0; i <= 1000; ++i) {
        const double y = i / 1000.0;
        const double x = inverse_binary_entropy(y);
        EXPECT_GE(x, 0.0);
        EXPECT_LE(x, 0.5);
        EXPECT_NEAR(binary_entropy(x), y, 1e-10) << "y=" << y;
    }
}

TEST(Entropy, FourVector) {
    EXPECT_DOUBLE_EQ(entropy_vec4(0.25, 0.25, 0.25, 0.25), 2.0);
    EXPECT_EQ(entropy_vec4(1, 0, 0, 0), 0.0);
    EXPECT_THROW(entropy_vec4(0.5, 0.5, 0.5, 0.0), std::invalid_argument);
    EXPECT_THROW(entropy_vec4(1.1, -0.1, 0, 0), std::invalid_argument);

    const double b = 0.5 * (1.0 - std::sqrt(0.8));
    const double alpha = b * b;
    const double v = entropy_vec4(alpha, 0.05, 0.05, 0.9 - alpha);
    EXPECT_NEAR(1.0 + binary_entropy(0.1) - v, 2 * 0.436380283400076, 1e-12);
}

TEST(MutualInformation, Examples) {
    const JointPmf indep = JointPmf::product(Pmf{0.3, 0.7}, Pmf{0.2, 0.5, 0.3});
    const FullJoint fi = compose(indep, AuxChannel::degenerate(2, 3));
    EXPECT_NEAR(mutual_information(fi, Axis::X, Axis::Y), 0.0, 1e-15);

    const FullJoint f1 = compose(dsbs_joint(0.1), AuxChannel::degenerate(2, 2));
    EXPECT_NEAR(mutual_information(f1, Axis::X, Axis::Y), 0.531004406410719, 1e-14);
    const FullJoint f2 = compose(dsbs_joint(0.2), AuxChannel::degenerate(2, 2));
    EXPECT_NEAR(mutual_information(f2, Axis::X, Axis::Y), 0.278071905112638, 1e-14);
    EXPECT_NEAR(mutual_information(dsbs_joint(0.2)), 0.278071905112638, 1e-14);
}

TEST(MutualInformation, RejectsOverlappingOrEmptyGroups) {
    const FullJoint f = compose(dsbs_joint(0.1), dsbs::interpolated_channel(0.1, 0.5));
    EXPECT_THROW(mutual_information(f, kXY, Axis::X), std::invalid_argument);
    EXPECT_THROW(mutual_information(f, Axes{}, Axis::X), std::invalid_argument);
    EXPECT_THROW(conditional_mutual_information(f, Axis::X, Axis::Y, Axis::Y), std::invalid_argument);
    EXPECT_THROW(conditional_mutual_information(f, Axis::X, Axes{}, Axis::U), std::invalid_argument);
}

TEST(ConditionalMutualInformation, Examples) {
    detail::SplitMix64 rng(3);
    for (int i = 0; i < 50; ++i) {
        FullJoint::Shape d{1 + rng.below(3), 1 + rng.below(3), 1, 1 + rng.below(2), 1};
        const FullJoint f(d, test::random_simplex(rng, d[0] * d[1] * d[3]));
        EXPECT_NEAR(conditional_mutual_information(f, Axis::X, Axis::Y, Axis::U),
                    mutual_information(f, Axis::X, Axis::Y), 1e-12);
    }

    const FullJoint star = compose(dsbs_joint(0.1), dsbs_wyner_channel(0.1));
    EXPECT_NEAR(conditional_mutual_information(star, Axis::X, Axis::Y, Axis::U), 0.0, 1e-9);

    const FullJoint pt = compose(dsbs_joint(0.1), dsbs::interpolated_channel(0.1, 0.2142));
    const double c = conditional_mutual_information(pt, Axis::X, Axis::Y, Axis::U);
    const double j = mutual_information(pt, kXY, Axis::U);
    EXPECT_NEAR(std::max(c, 0.5 * (j + c)), 0.323121673675278, 1e-12);
}

TEST(ConditionalMutualInformation, AveragesPerConditionValue) {
    detail::SplitMix64 rng(17);
    for (int i = 0; i < 100; ++i) {
        const FullJoint f = test::random_full_joint(rng, true);
        // sum over u of p(u) I(X;Y|U=u), each slice normalized and measured separately
        double total = 0.0;
        for (std::size_t u = 0; u < f.dim(Axis::U); ++u) {
            FullJoint::Shape d = f.dims();
            d[2] = 1;
            std::vector<double> slice(d[0] * d[1] * d[3] * d[4]);
            double pu = 0.0;
            std::size_t k = 0;
            for (std::size_t x = 0; x < d[0]; ++x)
                for (std::size_t y = 0; y < d[1]; ++y)
                    for (std::size_t u1 = 0; u1 < d[3]; ++u1)
                        for (std::size_t u2 = 0; u2 < d[4]; ++u2) {
                            slice[k] = f(x, y, u, u1, u2);
                            pu += slice[k++];
                        }
            if (pu <= 0.0) continue;
            for (double& v : slice) v /= pu;
            total += pu * mutual_information(FullJoint(d, slice), Axis::X, Axis::Y);
        }
        EXPECT_NEAR(conditional_mutual_information(f, Axis::X, Axis::Y, Axis::U), total, 1e-10);
    }
}

TEST(InformationProperties, AgreeWithCellwiseOracle) {
    detail::SplitMix64 rng(2024);
    const Axes groups[] = {Axis::X, Axis::Y, Axis::U, Axis::U1, Axis::U2, kXY, Axes{Axis::U, Axis::U1}};
    for (int i = 0; i < 1000; ++i) {
        const FullJoint f = test::random_full_joint(rng, i % 2 == 0);
        for (const Axes a : groups) {
            for (const Axes b : groups) {
                if (a.overlaps(b)) continue;
                const double mi = mutual_information(f, a, b);
                EXPECT_NEAR(mi, test::mi_direct(f, a, b), 1e-10);
                EXPECT_GE(mi, -1e-12);
                EXPECT_NEAR(mi, mutual_information(f, b, a), 1e-12);
            }
        }
        const double c = conditional_mutual_information(f, Axis::X, Axis::Y, Axes{Axis::U, Axis::U2});
        EXPECT_NEAR(c, test::cmi_direct(f, Axis::X, Axis::Y, Axes{Axis::U, Axis::U2}), 1e-10);
        EXPECT_GE(c, -1e-12);
    }
}

TEST(InformationProperties, ChainRuleAndBounds) {
    detail::SplitMix64 rng(99);
    for (int i = 0; i < 1000; ++i) {
        const FullJoint f = test::random_full_joint(rng, i % 3 == 0);
        const double lhs = mutual_information(f, kXY, Axes{Axis::U, Axis::U1});
        const double rhs = mutual_information(f, kXY, Axis::U) + conditional_mutual_information(f, kXY, Axis::U1, Axis::U);
        EXPECT_NEAR(lhs, rhs, 1e-10);
        for (std::size_t ax = 0; ax < kNumAxes; ++ax) {
            const Axis a = static_cast<Axis>(ax);
            const double h = entropy(f, a);
            EXPECT_GE(h, -1e-12);
            EXPECT_LE(h, std::log2(static_cast<double>(f.dim(a))) + 1e-12);
        }
        EXPECT_GE(entropy(f, Axes{Axis::X, Axis::Y, Axis::U, Axis::U1, Axis::U2}), -1e-12);
    }
}

}  // namespace
}  // namespace coordination
