#include "wgarch/aggregation.hpp"

#include "wgarch/errors.hpp"
#include "wgarch/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace wgarch {

namespace {

constexpr double kRatioTolerance = 1e-9;
constexpr double kAlphaEdge = 1e-14;
constexpr int kScanPoints = 400;

void require_kappa(double kappa, double alpha) {
    if (!std::isfinite(kappa)) {
        throw Error(ErrorCode::InvalidKurtosis, "kurtosis must be finite");
    }
    if (alpha > 0.0 ? kappa <= 3.0 : kappa <= 1.0) {
        throw Error(ErrorCode::InvalidKurtosis,
                    "kurtosis " + std::to_string(kappa) +
                        (alpha > 0.0 ? " must exceed 3 when alpha > 0" : " must exceed 1"));
    }
}

// Pieces of the fine-to-coarse relations that only depend on the fine
// parameters: with lambda, L = lambda^n,
//   a = n(1-b)^2 + 2n(n-1)(1-l)(1-l^2+a^2) / ((k-1)(1+l)) + 4 gap a (1-b l)/(1-l^2)
//   b = alpha (1 - beta lambda)(1 - L^2)/(1 - lambda^2)
// and the kurtosis relation coarse_kappa = kappa_intercept + kappa_slope * kappa.
struct FineTerms {
    double lambda;
    double one_minus_lambda;
    double one_minus_lambda_sq;
    double gap;
    double kappa_slope;
    double kappa_intercept;
};

FineTerms fine_terms(double alpha, double beta, double one_minus_lambda, long n) {
    FineTerms t{};
    const double nn = static_cast<double>(n);
    t.one_minus_lambda = one_minus_lambda;
    t.lambda = 1.0 - one_minus_lambda;
    t.one_minus_lambda_sq = one_minus_lambda * (2.0 - one_minus_lambda);
    t.gap = numerics::aggregation_gap(t.lambda, nn);
    const double k = t.gap * alpha * (1.0 - beta * t.lambda) /
                     (nn * nn * one_minus_lambda * one_minus_lambda *
                      (t.one_minus_lambda_sq + alpha * alpha));
    t.kappa_slope = 1.0 / nn + 6.0 * k;
    t.kappa_intercept = 3.0 - 3.0 / nn - 6.0 * k;
    return t;
}

double c_numerator(const FineTerms& t, double alpha, double beta, double kappa, long n) {
    const double nn = static_cast<double>(n);
    return nn * (1.0 - beta) * (1.0 - beta) +
           2.0 * nn * (nn - 1.0) * t.one_minus_lambda *
               (t.one_minus_lambda_sq + alpha * alpha) / ((kappa - 1.0) * (1.0 + t.lambda)) +
           4.0 * t.gap * alpha * (1.0 - beta * t.lambda) / t.one_minus_lambda_sq;
}

double c_denominator(const FineTerms& t, double alpha, double beta, double one_minus_big_sq) {
    return alpha * (1.0 - beta * t.lambda) * one_minus_big_sq / t.one_minus_lambda_sq;
}

// Smaller root of x^2 - m x + 1 given num = a, den = b of the c factor:
//   m - 2 = a (1 - L)^2 / (a L - b).
std::optional<double> solve_beta(double a, double b, double big_lambda, double one_minus_big) {
    const double denom = a * big_lambda - b;
    if (!(denom > 0.0)) return std::nullopt;
    const double d = a * one_minus_big * one_minus_big / denom;
    if (!std::isfinite(d) || d < 0.0) return std::nullopt;
    return 2.0 / (2.0 + d + std::sqrt(d * (d + 4.0)));
}

}  // namespace

long frequency_ratio(StepLength fine, StepLength coarse) {
    const double ratio = coarse.years() / fine.years();
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > kRatioTolerance * ratio) {
        throw Error(ErrorCode::NotIntegerMultiple,
                    "step ratio " + std::to_string(ratio) + " is not a positive integer");
    }
    return static_cast<long>(rounded);
}

double c_factor(const DiscreteGarchParams& fine, double fine_kappa, long n) {
    validate_discrete(fine);
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
    if (fine.alpha == 0.0) {
        throw Error(ErrorCode::DegenerateAlpha, "c factor is undefined for alpha = 0");
    }
    require_kappa(fine_kappa, fine.alpha);
    const FineTerms t = fine_terms(fine.alpha, fine.beta, 1.0 - fine.lambda(), n);
    const double y = static_cast<double>(n) * std::log(t.lambda);
    const double one_minus_big_sq = -std::expm1(2.0 * y);
    return c_numerator(t, fine.alpha, fine.beta, fine_kappa, n) /
           c_denominator(t, fine.alpha, fine.beta, one_minus_big_sq);
}

AggregationResult aggregate(const DiscreteGarchParams& fine, double fine_kappa,
                            StepLength coarse_delta) {
    validate_discrete(fine);
    require_kappa(fine_kappa, fine.alpha);
    const long n = frequency_ratio(fine.delta, coarse_delta);
    if (n == 1) {
        return {fine, fine_kappa, std::nullopt};
    }

    const double nn = static_cast<double>(n);
    const double lambda = fine.lambda();
    const double y = nn * std::log(lambda);
    const double big_lambda = std::pow(lambda, nn);
    const double one_minus_big = -std::expm1(y);
    const double omega = fine.omega * one_minus_big / (1.0 - lambda);

    AggregationResult out;
    out.params.delta = coarse_delta;
    out.params.omega = omega;

    if (fine.alpha == 0.0) {
        out.params.alpha = 0.0;
        out.params.beta = big_lambda;
        out.kurtosis = 3.0 + (fine_kappa - 3.0) / nn;
        return out;
    }

    const FineTerms t = fine_terms(fine.alpha, fine.beta, 1.0 - lambda, n);
    const double one_minus_big_sq = -std::expm1(2.0 * y);
    const double a = c_numerator(t, fine.alpha, fine.beta, fine_kappa, n);
    const double b = c_denominator(t, fine.alpha, fine.beta, one_minus_big_sq);
    const auto beta = solve_beta(a, b, big_lambda, one_minus_big);
    if (!beta || *beta >= big_lambda) {
        throw Error(ErrorCode::NoValidBetaRoot,
                    "beta relation has no root in [0, lambda^n); inputs are outside the weak "
                    "GARCH region");
    }
    out.params.beta = *beta;
    // lambda^n - beta, written as (1 - beta) - (1 - lambda^n) to keep digits.
    out.params.alpha = std::max(0.0, (1.0 - *beta) - one_minus_big);
    out.kurtosis = t.kappa_intercept + t.kappa_slope * fine_kappa;
    out.c_factor = a / b;
    return out;
}

AggregationResult disaggregate(const DiscreteGarchParams& coarse, double coarse_kappa,
                               StepLength fine_delta) {
    validate_discrete(coarse);
    if (!std::isfinite(coarse_kappa) || coarse_kappa <= 1.0) {
        throw Error(ErrorCode::InvalidKurtosis, "coarse kurtosis must be finite and > 1");
    }
    const long n = frequency_ratio(fine_delta, coarse.delta);
    if (n == 1) {
        return {coarse, coarse_kappa, std::nullopt};
    }

    const double nn = static_cast<double>(n);
    const double big_lambda = coarse.lambda();
    const double one_minus_big = 1.0 - big_lambda;
    const double log_fine_lambda = std::log(big_lambda) / nn;
    const double lambda = std::exp(log_fine_lambda);
    const double one_minus_lambda = -std::expm1(log_fine_lambda);

    AggregationResult out;
    out.params.delta = fine_delta;
    out.params.omega = coarse.omega * one_minus_lambda / one_minus_big;

    if (coarse.alpha == 0.0) {
        out.params.alpha = 0.0;
        out.params.beta = lambda;
        out.kurtosis = 3.0 + nn * (coarse_kappa - 3.0);
        if (out.kurtosis <= 1.0) {
            throw Error(ErrorCode::InvalidKurtosis, "implied fine kurtosis is <= 1");
        }
        return out;
    }

    const double coarse_beta = coarse.beta;
    const double one_minus_big_sq = one_minus_big * (1.0 + big_lambda);
    // Fine kurtosis implied by the kurtosis relation at a trial fine alpha.
    auto fine_kappa = [&](double alpha) {
        const FineTerms t = fine_terms(alpha, lambda - alpha, one_minus_lambda, n);
        return (coarse_kappa - t.kappa_intercept) / t.kappa_slope;
    };
    // (1 - beta_c)^2 b - a alpha_c (1 - beta_c L): zero exactly when the coarse
    // beta solves the beta relation generated by the trial fine parameters.
    auto residual = [&](double alpha) -> std::optional<double> {
        const double beta = lambda - alpha;
        const FineTerms t = fine_terms(alpha, beta, one_minus_lambda, n);
        const double kappa = (coarse_kappa - t.kappa_intercept) / t.kappa_slope;
        if (!std::isfinite(kappa) || kappa <= 1.0) return std::nullopt;
        const double a = c_numerator(t, alpha, beta, kappa, n);
        const double b = c_denominator(t, alpha, beta, one_minus_big_sq);
        return (1.0 - coarse_beta) * (1.0 - coarse_beta) * b -
               a * coarse.alpha * (1.0 - coarse_beta * big_lambda);
    };

    // Geometric scan from the lower edge for the first negative-to-positive
    // crossing, then refine inside that cell.
    const double lo_edge = kAlphaEdge;
    const double hi_edge = lambda - kAlphaEdge;
    const double growth = std::pow(hi_edge / lo_edge, 1.0 / (kScanPoints - 1));
    std::optional<double> bracket_lo;
    std::optional<double> bracket_hi;
    double prev_alpha = 0.0;
    std::optional<double> prev_value;
    for (int i = 0; i < kScanPoints; ++i) {
        const double alpha = (i == kScanPoints - 1) ? hi_edge : lo_edge * std::pow(growth, i);
        const auto value = residual(alpha);
        if (value && prev_value && (*prev_value < 0.0) != (*value < 0.0)) {
            bracket_lo = prev_alpha;
            bracket_hi = alpha;
            break;
        }
        if (value) {
            prev_alpha = alpha;
            prev_value = value;
        } else {
            prev_value.reset();
        }
    }
    if (!bracket_lo) {
        throw Error(ErrorCode::NoSolutionInBracket,
                    "no fine alpha in (0, lambda) reproduces the coarse parameters");
    }

    const auto root = numerics::bracketed_root(
        [&](double alpha) {
            const auto v = residual(alpha);
            return v ? *v : std::nan("");
        },
        *bracket_lo, *bracket_hi, 200, 52);
    if (!root) {
        throw Error(ErrorCode::ConvergenceFailure, "fine alpha search exceeded its budget");
    }

    out.params.alpha = root->root;
    out.params.beta = lambda - root->root;
    out.kurtosis = fine_kappa(root->root);
    return out;
}

}  // namespace wgarch
