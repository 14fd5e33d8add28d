#include "wgarch/limit.hpp"

#include "wgarch/errors.hpp"
#include "wgarch/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace wgarch {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// 6 a / (1 - a) * (x - 1 + e^-x) / x^2 with a = alpha^2 / theta, x = theta delta.
double excess_kurtosis(double a, double x) {
    return 6.0 * a / (1.0 - a) * numerics::exp_neg_remainder(x) / (x * x);
}

double relative_gap(double got, double want) {
    const double scale = std::max(std::abs(got), std::abs(want));
    return scale == 0.0 ? 0.0 : std::abs(got - want) / scale;
}

}  // namespace

double kappa_limit(const ContinuousParams& c) {
    validate_continuous(c);
    return 3.0 / (1.0 - c.alpha * c.alpha / c.theta);
}

double discrete_kurtosis(const ContinuousParams& c, StepLength delta) {
    validate_continuous(c);
    return 3.0 + excess_kurtosis(c.alpha * c.alpha / c.theta, c.theta * delta.years());
}

Discretization continuous_to_discrete(const ContinuousParams& c, StepLength delta) {
    validate_continuous(c);
    const double x = c.theta * delta.years();
    const double lambda = std::exp(-x);
    const double one_minus_lambda = -std::expm1(-x);

    Discretization out;
    out.params.delta = delta;
    out.params.omega = c.omega / c.theta * one_minus_lambda;

    if (c.alpha == 0.0) {
        out.params.alpha = 0.0;
        out.params.beta = lambda;
        out.kurtosis = 3.0;
        out.c_factor = kNaN;
        out.m = kNaN;
        return out;
    }

    // Everything below is written in x and a = alpha^2 / theta. With
    //   N = a x + (1 - a) x^2 + 2 a (x - 1 + e^-x),  D = a (1 - e^-2x) / 2,
    // the c factor is N / D and c e^-x - 1 = [(1 - a) x^2 e^-x + a B(x)] / D.
    const double a = c.alpha * c.alpha / c.theta;
    const double remainder = numerics::exp_neg_remainder(x);
    const double numer = a * x + (1.0 - a) * x * x + 2.0 * a * remainder;
    const double denom = 0.5 * a * -std::expm1(-2.0 * x);
    const double feasibility = (1.0 - a) * x * x * lambda + a * numerics::beta_feasibility_core(x);
    out.c_factor = numer / denom;
    if (!(feasibility > 0.0)) {
        out.m = kNaN;
        throw Error(ErrorCode::BetaQuadraticInfeasible,
                    "c exp(-theta delta) <= 1 at theta*delta = " + std::to_string(x));
    }

    // m - 2 = c (1 - e^-x)^2 / (c e^-x - 1)
    const double d = numer * one_minus_lambda * one_minus_lambda / feasibility;
    const double s = std::sqrt(d * (d + 4.0));
    out.m = 2.0 + d;
    out.params.beta = 2.0 / (2.0 + d + s);
    const double one_minus_beta = (d + s) / (2.0 + d + s);
    out.params.alpha = one_minus_beta - one_minus_lambda;
    if (!(out.params.alpha >= 0.0) || !(out.params.beta > 0.0)) {
        throw Error(ErrorCode::BetaQuadraticInfeasible,
                    "beta root outside (0, lambda] at theta*delta = " + std::to_string(x));
    }
    out.kurtosis = 3.0 + excess_kurtosis(a, x);
    return out;
}

ContinuousRecovery discrete_to_continuous(const DiscreteGarchParams& p, double kappa, double mu) {
    validate_discrete(p);
    if (!std::isfinite(kappa) || kappa < 3.0) {
        throw Error(ErrorCode::KurtosisOutOfRange, "kurtosis must be finite and >= 3");
    }
    const double delta = p.delta.years();
    // 1 - beta is exact for beta >= 1/2, so this keeps the digits of 1 - lambda.
    const double one_minus_lambda = (1.0 - p.beta) - p.alpha;
    const double theta = -std::log1p(-one_minus_lambda) / delta;

    ContinuousRecovery out;
    out.params.theta = theta;
    out.params.omega = p.omega * theta / one_minus_lambda;
    out.params.mu = mu;
    out.params.alpha = 0.0;

    if (kappa > 3.0) {
        const double x = theta * delta;
        const double hi = std::sqrt(theta) * (1.0 - 1e-12);
        auto gap = [&](double alpha) {
            return 3.0 + excess_kurtosis(alpha * alpha / theta, x) - kappa;
        };
        if (!(gap(hi) > 0.0)) {
            throw Error(ErrorCode::KurtosisOutOfRange,
                        "kurtosis " + std::to_string(kappa) +
                            " is beyond the range reachable with alpha^2 < theta");
        }
        const auto root = numerics::bracketed_root(gap, 0.0, hi, 200, 52);
        if (!root) {
            throw Error(ErrorCode::KurtosisOutOfRange, "kurtosis map is not monotone on the bracket");
        }
        out.params.alpha = root->root;
    }

    try {
        const Discretization back = continuous_to_discrete(out.params, p.delta);
        out.consistency_residual = std::max({relative_gap(back.params.omega, p.omega),
                                             relative_gap(back.params.alpha, p.alpha),
                                             relative_gap(back.params.beta, p.beta),
                                             relative_gap(back.kurtosis, kappa)});
    } catch (const Error&) {
        out.consistency_residual = std::numeric_limits<double>::infinity();
    }
    if (!(out.consistency_residual <= kConsistencyTolerance)) {
        out.warnings.push_back("InconsistentInput: consistency residual " +
                               std::to_string(out.consistency_residual) +
                               " exceeds 1e-6; inputs are off the weak GARCH manifold");
    }
    return out;
}

std::vector<ConvergenceRow> convergence_table(const ContinuousParams& c,
                                              std::span<const StepLength> deltas) {
    validate_continuous(c);
    for (std::size_t i = 1; i < deltas.size(); ++i) {
        if (!(deltas[i].years() < deltas[i - 1].years())) {
            throw Error(ErrorCode::InvalidArgument, "steps must be strictly decreasing");
        }
    }
    std::vector<ConvergenceRow> rows;
    rows.reserve(deltas.size());
    for (const StepLength delta : deltas) {
        const Discretization d = continuous_to_discrete(c, delta);
        const double h = delta.years();
        rows.push_back({delta, d.params.omega / h, d.params.alpha / std::sqrt(h),
                        ((1.0 - d.params.beta) - d.params.alpha) / h, d.kurtosis});
    }
    return rows;
}

std::vector<StepLength> dyadic_steps(int from_exponent, int to_exponent) {
    std::vector<StepLength> steps;
    for (int k = from_exponent; k <= to_exponent; ++k) {
        steps.emplace_back(std::ldexp(1.0, -k));
    }
    return steps;
}

}  // namespace wgarch
