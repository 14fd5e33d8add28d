#pragma once

#include "wgarch/params.hpp"

#include <optional>

namespace wgarch {

/// Parameters and kurtosis of a weak GARCH observed at another step length.
struct AggregationResult {
    DiscreteGarchParams params;
    double kurtosis = 3.0;
    /// The c factor of the beta relation; empty on the alpha = 0 branch and
    /// for the identity map.
    std::optional<double> c_factor;
};

/// n such that coarse = n * fine, n >= 1. Throws NotIntegerMultiple otherwise
/// (relative tolerance 1e-9 on the ratio).
long frequency_ratio(StepLength fine, StepLength coarse);

/// The c factor linking fine parameters to the coarse beta:
///   beta_c / (1 + beta_c^2) = (c L - 1) / (c (1 + L^2) - 2),  L = lambda^n.
/// Throws DegenerateAlpha when fine.alpha == 0.
double c_factor(const DiscreteGarchParams& fine, double fine_kappa, long n);

/// Exact temporal aggregation from step `fine.delta` to `coarse_delta`
/// (an integer multiple of it).
AggregationResult aggregate(const DiscreteGarchParams& fine, double fine_kappa,
                            StepLength coarse_delta);

/// Inverse of `aggregate`: the finer-step weak GARCH whose aggregate is
/// `coarse`. Solved by a bracketed search on the fine alpha.
AggregationResult disaggregate(const DiscreteGarchParams& coarse, double coarse_kappa,
                               StepLength fine_delta);

}  // namespace wgarch
