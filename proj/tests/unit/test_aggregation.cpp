#include "wgarch/aggregation.hpp"
#include "wgarch/errors.hpp"
#include "wgarch/limit.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace wgarch;

namespace {

// 50-digit reference values.
// fine: delta = 1, omega = 0.1, alpha = 0.1, beta = 0.8, kappa = 5.
struct Coarse {
    long n;
    double omega, alpha, beta, kappa;
};
constexpr Coarse kReference[] = {
    {2, 0.19, 0.10842461689742528181, 0.70157538310257471819, 4.84},
    {5, 0.40951, 0.096868159603193427424, 0.49362184039680657258, 4.6161856},
    {12, 0.717570463519, 0.059954934952307080352, 0.22247460152869291965, 4.2923355851223333333},
};

DiscreteGarchParams reference_fine() { return {StepLength(1.0), 0.1, 0.1, 0.8}; }

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected wgarch::Error";
    return ErrorCode::InvalidArgument;
}

struct Sample {
    DiscreteGarchParams p;
    double kappa;
};

Sample draw_model(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double lambda = 0.5 + 0.49 * u(rng);
    const double alpha = (0.02 + 0.2 * u(rng)) * (1.0 - lambda) + 0.01 + 0.1 * u(rng);
    const double a = std::min(alpha, 0.9 * lambda);
    const double omega = 1e-6 + 1e-3 * u(rng);
    const double delta = 1.0 / (1.0 + 500.0 * u(rng));
    // Strong-GARCH kurtosis with Gaussian errors is a valid weak kurtosis.
    const double denom = 1.0 - lambda * lambda - 2.0 * a * a;
    const double kappa = denom > 0.05 ? 3.0 * (1.0 - lambda * lambda) / denom + 0.5 * u(rng) : 3.5;
    return {{StepLength(delta), omega, a, lambda - a}, kappa};
}

// Random fine-step models whose aggregates up to 8 steps stay in the weak-GARCH region.
Sample random_model(std::mt19937_64& rng) {
    for (;;) {
        const Sample s = draw_model(rng);
        try {
            aggregate(s.p, s.kappa, StepLength(8 * s.p.delta.years()));
            return s;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NoValidBetaRoot) throw;
        }
    }
}

void expect_close(const AggregationResult& a, const AggregationResult& b, double tol) {
    EXPECT_NEAR(a.params.omega, b.params.omega, tol * std::max(1.0, std::abs(b.params.omega)));
    EXPECT_NEAR(a.params.alpha, b.params.alpha, tol);
    EXPECT_NEAR(a.params.beta, b.params.beta, tol);
    EXPECT_NEAR(a.kurtosis, b.kurtosis, tol * b.kurtosis);
}

}  // namespace

TEST(FrequencyRatio, IntegerAndNonInteger) {
    EXPECT_EQ(frequency_ratio(StepLength(1.0 / 252), StepLength(5.0 / 252)), 5);
    EXPECT_EQ(frequency_ratio(StepLength(0.1), StepLength(0.3)), 3);
    EXPECT_EQ(code_of([] { frequency_ratio(StepLength(1.0), StepLength(2.5)); }),
              ErrorCode::NotIntegerMultiple);
    EXPECT_EQ(code_of([] { frequency_ratio(StepLength(1.0), StepLength(0.5)); }),
              ErrorCode::NotIntegerMultiple);
}

TEST(Aggregate, MatchesHighPrecisionReference) {
    for (const Coarse& ref : kReference) {
        const auto r = aggregate(reference_fine(), 5.0, StepLength(static_cast<double>(ref.n)));
        EXPECT_NEAR(r.params.omega, ref.omega, 1e-14) << ref.n;
        EXPECT_NEAR(r.params.alpha, ref.alpha, 1e-13) << ref.n;
        EXPECT_NEAR(r.params.beta, ref.beta, 1e-13) << ref.n;
        EXPECT_NEAR(r.kurtosis, ref.kappa, 1e-13) << ref.n;
        EXPECT_DOUBLE_EQ(r.params.delta.years(), static_cast<double>(ref.n));
        ASSERT_TRUE(r.c_factor);
    }
}

TEST(Aggregate, IdentityForUnitRatio) {
    const auto fine = reference_fine();
    const auto r = aggregate(fine, 5.0, fine.delta);
    EXPECT_EQ(r.params.omega, fine.omega);
    EXPECT_EQ(r.params.alpha, fine.alpha);
    EXPECT_EQ(r.params.beta, fine.beta);
    EXPECT_EQ(r.kurtosis, 5.0);
}

TEST(Aggregate, DegenerateAlpha) {
    const DiscreteGarchParams fine{StepLength(1.0), 0.01, 0.0, 0.99};
    const auto r = aggregate(fine, 3.0, StepLength(2.0));
    EXPECT_EQ(r.params.alpha, 0.0);
    EXPECT_NEAR(r.params.beta, 0.9801, 1e-15);
    EXPECT_NEAR(r.params.omega, 0.01 * 1.99, 1e-15);
    EXPECT_EQ(r.kurtosis, 3.0);
    EXPECT_FALSE(r.c_factor);
    const auto k = aggregate(fine, 5.0, StepLength(4.0));
    EXPECT_NEAR(k.kurtosis, 3.5, 1e-15);
}

TEST(Aggregate, RejectsBadInputs) {
    EXPECT_EQ(code_of([] { aggregate(reference_fine(), 5.0, StepLength(1.5)); }),
              ErrorCode::NotIntegerMultiple);
    EXPECT_EQ(code_of([] { aggregate({StepLength(1.0), 0.1, 0.3, 0.8}, 5.0, StepLength(2.0)); }),
              ErrorCode::StationarityViolation);
    EXPECT_EQ(code_of([] { aggregate(reference_fine(), 2.0, StepLength(2.0)); }),
              ErrorCode::InvalidKurtosis);
}

TEST(Aggregate, NoValidBetaRootOutsideWeakRegion) {
    // Over long horizons the coarse beta of this model would be negative.
    const DiscreteGarchParams fine{StepLength(1.0), 0.01, 0.1, 0.85};
    EXPECT_NO_THROW(aggregate(fine, 6.0, StepLength(10.0)));
    EXPECT_EQ(code_of([&] { aggregate(fine, 6.0, StepLength(100.0)); }), ErrorCode::NoValidBetaRoot);
}

TEST(Aggregate, DiscretizationCommutesAtBaselineParams) {
    const ContinuousParams c{0.0045, 0.05, 0.1, 0.0};
    const double delta = 1.0 / 504;
    const auto fine = continuous_to_discrete(c, StepLength(delta));
    const auto coarse = aggregate(fine.params, fine.kurtosis, StepLength(2 * delta));
    const auto direct = continuous_to_discrete(c, StepLength(2 * delta));
    EXPECT_NEAR(coarse.params.omega, direct.params.omega, 1e-15);
    EXPECT_NEAR(coarse.params.alpha, direct.params.alpha, 1e-11);
    EXPECT_NEAR(coarse.params.beta, direct.params.beta, 1e-11);
    EXPECT_NEAR(coarse.kurtosis, direct.kurtosis, 1e-11);
}

TEST(CFactor, UnitRatioReproducesBeta) {
    const auto fine = reference_fine();
    const double c = c_factor(fine, 5.0, 1);
    const double lambda = fine.lambda();
    const double m = (c * (1 + lambda * lambda) - 2) / (c * lambda - 1);
    const double beta = (m - std::sqrt(m * m - 4)) / 2;
    EXPECT_NEAR(beta, fine.beta, 1e-12);
}

TEST(CFactor, DegenerateAlphaIsAnError) {
    EXPECT_EQ(code_of([] { c_factor({StepLength(1.0), 0.1, 0.0, 0.9}, 3.0, 2); }),
              ErrorCode::DegenerateAlpha);
}

TEST(CFactor, ApproachesClosedFormLimitValue) {
    // Closed-form c of the limit at delta = 1 for the baseline params (50 digits).
    constexpr double kClosedForm = 1.312676636391174505;
    const ContinuousParams c{0.0045, 0.05, 0.1, 0.0};
    const auto fine = continuous_to_discrete(c, StepLength(1.0 / 252));
    const double cf = c_factor(fine.params, fine.kurtosis, 252);
    EXPECT_NEAR(cf / kClosedForm, 1.0, 0.01);
    EXPECT_NEAR(cf, kClosedForm, 1e-9);
}

TEST(Disaggregate, RecoversFineModel) {
    const DiscreteGarchParams fine{StepLength(1.0 / 1008), 1e-6, 0.04, 0.95};
    const auto coarse = aggregate(fine, 4.0, StepLength(4.0 / 1008));
    const auto back = disaggregate(coarse.params, coarse.kurtosis, fine.delta);
    EXPECT_NEAR(back.params.omega, fine.omega, 1e-8 * fine.omega);
    EXPECT_NEAR(back.params.alpha, fine.alpha, 1e-8);
    EXPECT_NEAR(back.params.beta, fine.beta, 1e-8);
    EXPECT_NEAR(back.kurtosis, 4.0, 1e-8);
    EXPECT_EQ(back.params.delta, fine.delta);
}

TEST(Disaggregate, IdentityAndDegenerate) {
    const auto p = reference_fine();
    const auto same = disaggregate(p, 5.0, p.delta);
    EXPECT_EQ(same.params.alpha, p.alpha);
    EXPECT_EQ(same.kurtosis, 5.0);

    const DiscreteGarchParams coarse{StepLength(4.0), 0.02, 0.0, 0.6561};
    const auto fine = disaggregate(coarse, 3.5, StepLength(1.0));
    EXPECT_EQ(fine.params.alpha, 0.0);
    EXPECT_NEAR(fine.params.beta, 0.9, 1e-15);
    EXPECT_NEAR(fine.kurtosis, 5.0, 1e-14);
    const auto again = aggregate(fine.params, fine.kurtosis, StepLength(4.0));
    EXPECT_NEAR(again.params.omega, 0.02, 1e-15);
    EXPECT_NEAR(again.kurtosis, 3.5, 1e-14);
}

TEST(Disaggregate, NoSolutionForUnreachableCoarseModel) {
    // A coarse model with very high ARCH weight is not an aggregate of any finer weak GARCH.
    const DiscreteGarchParams coarse{StepLength(2.0), 0.1, 0.6, 0.3};
    EXPECT_EQ(code_of([&] { disaggregate(coarse, 3.2, StepLength(1.0)); }), ErrorCode::NoSolutionInBracket);
}

TEST(AggregationProperties, SemigroupOnRandomModels) {
    std::mt19937_64 rng(20240611);
    for (int trial = 0; trial < 100; ++trial) {
        const Sample s = random_model(rng);
        const double d = s.p.delta.years();
        const auto two = aggregate(s.p, s.kappa, StepLength(2 * d));
        const auto four_via_two = aggregate(two.params, two.kurtosis, StepLength(4 * d));
        const auto four = aggregate(s.p, s.kappa, StepLength(4 * d));
        expect_close(four_via_two, four, 1e-10);
    }
}

TEST(AggregationProperties, RoundTripOnRandomModels) {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        const Sample s = random_model(rng);
        const double d = s.p.delta.years();
        for (long n : {2L, 5L}) {
            const auto coarse = aggregate(s.p, s.kappa, StepLength(n * d));
            const auto fine = disaggregate(coarse.params, coarse.kurtosis, s.p.delta);
            const auto again = aggregate(fine.params, fine.kurtosis, StepLength(n * d));
            expect_close(again, coarse, 1e-8);
        }
    }
}

TEST(AggregationProperties, PersistenceAndLongRunVarianceInvariance) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const Sample s = random_model(rng);
        const double d = s.p.delta.years();
        const auto r = aggregate(s.p, s.kappa, StepLength(7 * d));
        const double fine_lambda = s.p.lambda();
        EXPECT_NEAR(std::pow(r.params.lambda(), 1.0 / (7 * d)), std::pow(fine_lambda, 1.0 / d), 1e-12);
        EXPECT_NEAR(r.params.omega / (1 - r.params.lambda()), s.p.omega / (1 - fine_lambda),
                    1e-12 * s.p.omega / (1 - fine_lambda));
        EXPECT_NEAR(r.params.lambda(), std::pow(fine_lambda, 7), 4 * std::numeric_limits<double>::epsilon());
    }
}

TEST(AggregationProperties, KurtosisDecaysTowardThree) {
    const DiscreteGarchParams fine{StepLength(1.0), 0.01, 0.01, 0.985};
    double previous = 8.0;
    for (long n : {1L, 10L, 100L, 1000L}) {
        const double k = aggregate(fine, 8.0, StepLength(static_cast<double>(n))).kurtosis;
        EXPECT_LE(k, previous) << n;
        EXPECT_GT(k, 3.0);
        previous = k;
    }
    EXPECT_LT(previous - 3.0, 0.15);
}
