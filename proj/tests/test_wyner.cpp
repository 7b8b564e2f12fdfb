#include <cmath>

#include <gtest/gtest.h>

#include "coordination/dsbs.hpp"
#include "coordination/info.hpp"
#include "coordination/wyner.hpp"
#include "oracles.hpp"

namespace coordination {
namespace {

const Axes kXY{Axis::X, Axis::Y};

SolverOptions quick(std::size_t restarts = 10, std::uint64_t seed = 0) {
    SolverOptions o;
    o.restarts = restarts;
    o.seed = seed;
    return o;
}

TEST(DsbsWynerChannel, ClosedForm) {
    const double b = 0.5 * (1.0 - std::sqrt(0.8));
    EXPECT_NEAR(b, 0.052786404500042, 1e-15);
    const AuxChannel ch = dsbs_wyner_channel(0.1);
    EXPECT_NEAR(ch.row(1, 1)[0], b * b / 0.9, 1e-16);
    EXPECT_NEAR(ch.row(1, 1)[0], 0.003096, 1e-6);
    EXPECT_NEAR(ch.row(0, 0)[1], b * b / 0.9, 1e-16);
    EXPECT_EQ(ch.row(0, 1)[0], 0.5);
    EXPECT_EQ(ch.row(1, 0)[1], 0.5);
    for (const auto& r : ch.rows()) EXPECT_NEAR(r[0] + r[1], 1.0, 1e-15);

    const FullJoint f = compose(dsbs_joint(0.1), ch);
    EXPECT_NEAR(conditional_mutual_information(f, Axis::X, Axis::Y, Axis::U), 0.0, 1e-9);
    EXPECT_NEAR(mutual_information(f, kXY, Axis::U), 0.872760566800152, 1e-9);
    EXPECT_NEAR(mutual_information(f, kXY, Axis::U), 1.0 + binary_entropy(0.1) - 2.0 * binary_entropy(b), 1e-12);

    EXPECT_THROW(dsbs_wyner_channel(0.0), std::invalid_argument);
    EXPECT_THROW(dsbs_wyner_channel(0.5), std::invalid_argument);
}

TEST(WynerCi, IndependentSourceNeedsNoCommonPart) {
    const JointPmf q = JointPmf::product(Pmf{0.3, 0.7}, Pmf{0.6, 0.4});
    const WynerResult r = wyner_ci(q, 1, quick());
    EXPECT_NEAR(r.value, 0.0, 1e-12);
    EXPECT_EQ(r.channel.card_u(), 1u);
    EXPECT_LE(r.markov_defect, 1e-12);
    EXPECT_NEAR(no_sr_rate(q, quick()).value, 0.0, 1e-6);
}

TEST(WynerCi, DsbsMatchesClosedForm) {
    const WynerResult r1 = wyner_ci(dsbs_joint(0.1), 2);
    EXPECT_NEAR(r1.value, 0.872760566800152, 1e-3);
    EXPECT_LE(r1.markov_defect, kMarkovTolerance);
    const WynerResult r2 = wyner_ci(dsbs_joint(0.2), 2);
    EXPECT_NEAR(r2.value, 0.705904900983266, 1e-3);
    EXPECT_LE(r2.markov_defect, kMarkovTolerance);
    EXPECT_NEAR(no_sr_rate(dsbs_joint(0.1), quick()).value, 0.872760566800152, 1e-3);
}

TEST(WynerCi, IdenticalPairNeedsTheWholeSource) {
    const JointPmf q(2, 2, {0.5, 0.0, 0.0, 0.5});
    const WynerResult r = no_sr_rate(q, quick());
    EXPECT_NEAR(r.value, 1.0, 1e-3);
    EXPECT_LE(r.markov_defect, kMarkovTolerance);
}

TEST(WynerCi, ResultIsSelfConsistent) {
    const JointPmf q = dsbs_joint(0.25);
    const WynerResult r = wyner_ci(q, 3, quick());
    const FullJoint f = compose(q, r.channel);
    EXPECT_NEAR(r.value, mutual_information(f, kXY, Axis::U), 1e-9);
    EXPECT_NEAR(r.markov_defect, conditional_mutual_information(f, Axis::X, Axis::Y, Axis::U), 1e-9);
    EXPECT_GE(r.feasible_restarts, 1u);
    EXPECT_NEAR(r.lower_bound, mutual_information(q), 1e-15);
    EXPECT_DOUBLE_EQ(r.upper_bound, 1.0);
}

TEST(WynerCi, SandwichOnRandomSources) {
    detail::SplitMix64 rng(77);
    for (int i = 0; i < 12; ++i) {
        const std::size_t nx = 2 + rng.below(2), ny = 2 + rng.below(2);
        const JointPmf q = test::random_joint(rng, nx, ny);
        const WynerResult r = wyner_ci(q, nx * ny, quick(8, i));
        const double hx = entropy(marginal(q, Axis::X));
        const double hy = entropy(marginal(q, Axis::Y));
        EXPECT_GE(r.value, mutual_information(q) - 1e-6);
        EXPECT_LE(r.value, std::min(hx, hy) + 1e-6);
        EXPECT_LE(r.markov_defect, kMarkovTolerance);
    }
}

TEST(WynerCi, MonotoneInCardinality) {
    const JointPmf q = dsbs_joint(0.2);
    double prev = wyner_ci(q, 2, quick(20)).value;
    for (std::size_t k = 3; k <= 5; ++k) {
        const double v = wyner_ci(q, k, quick(20)).value;
        EXPECT_LE(v, prev + 1e-6) << "card " << k;
        prev = v;
    }
}

TEST(WynerCi, DeterministicAcrossRunsAndThreadCounts) {
    const JointPmf q = JointPmf::from_rows({{0.3, 0.1, 0.05}, {0.05, 0.2, 0.3}});
    SolverOptions o = quick(9, 42);
    const WynerResult a = wyner_ci(q, 4, o);
    const WynerResult b = wyner_ci(q, 4, o);
    o.threads = 3;
    const WynerResult c = wyner_ci(q, 4, o);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.channel, b.channel);
    EXPECT_EQ(a.value, c.value);
    EXPECT_EQ(a.channel, c.channel);
}

TEST(WynerCi, ReportsInfeasibility) {
    try {
        wyner_ci(dsbs_joint(0.2), 1, quick());
        FAIL() << "expected SolverInfeasible";
    } catch (const SolverInfeasible& e) {
        EXPECT_NEAR(e.best().markov_defect, 0.278071905112638, 1e-12);
    }
    EXPECT_THROW(wyner_ci(dsbs_joint(0.2), 0, quick()), std::invalid_argument);
    SolverOptions bad;
    bad.restarts = 0;
    EXPECT_THROW(wyner_ci(dsbs_joint(0.2), 2, bad), std::invalid_argument);
}

}  // namespace
}  // namespace coordination
