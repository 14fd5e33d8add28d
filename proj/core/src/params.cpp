#include "wgarch/params.hpp"

#include "wgarch/errors.hpp"
#include "wgarch/limit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wgarch {

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw Error(ErrorCode::NonFiniteParameter, std::string(what) + " is not finite");
    }
}

}  // namespace

StepLength::StepLength(double years) : years_(years) {
    if (!std::isfinite(years) || years <= 0.0) {
        throw Error(ErrorCode::InvalidStepLength,
                    "step length must be finite and > 0, got " + std::to_string(years));
    }
}

double KurtosisSpec::instantaneous(double tau) const noexcept {
    return std::max(3.0, raw(tau));
}

double KurtosisSpec::unconditional_or_implied(const ContinuousParams& c) const {
    return unconditional ? *unconditional : kappa_limit(c);
}

DiscreteGarchParams validate_discrete(const DiscreteGarchParams& p) {
    require_finite(p.omega, "omega");
    require_finite(p.alpha, "alpha");
    require_finite(p.beta, "beta");
    if (p.omega <= 0.0) {
        throw Error(ErrorCode::NonPositiveOmega, "omega must be > 0");
    }
    if (p.alpha < 0.0 || p.beta < 0.0) {
        throw Error(ErrorCode::NegativeCoefficient, "alpha and beta must be >= 0");
    }
    const double lambda = p.lambda();
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw Error(ErrorCode::StationarityViolation,
                    "alpha + beta = " + std::to_string(lambda) + " outside (0, 1)");
    }
    return p;
}

ContinuousParams validate_continuous(const ContinuousParams& p) {
    require_finite(p.omega, "omega");
    require_finite(p.theta, "theta");
    require_finite(p.alpha, "alpha");
    require_finite(p.mu, "mu");
    if (p.omega <= 0.0 || p.theta <= 0.0) {
        throw Error(ErrorCode::NonPositiveParameter, "omega and theta must be > 0");
    }
    if (p.alpha < 0.0) {
        throw Error(ErrorCode::NegativeCoefficient, "alpha must be >= 0");
    }
    if (p.alpha * p.alpha >= p.theta) {
        throw Error(ErrorCode::InfiniteKurtosis,
                    "alpha^2 = " + std::to_string(p.alpha * p.alpha) + " >= theta = " +
                        std::to_string(p.theta));
    }
    return p;
}

KurtosisSpec validate_kurtosis(const KurtosisSpec& k) {
    require_finite(k.a, "kappa_a");
    require_finite(k.b, "kappa_b");
    if (k.unconditional) {
        require_finite(*k.unconditional, "kappa");
        if (*k.unconditional < 3.0) {
            throw Error(ErrorCode::InvalidKurtosis, "unconditional kurtosis must be >= 3");
        }
    }
    return k;
}

}  // namespace wgarch
