#pragma once

#include "wgarch/params.hpp"

#include <span>
#include <string>
#include <vector>

namespace wgarch {

/// Weak GARCH parameters of the limit diffusion sampled at one step.
struct Discretization {
    DiscreteGarchParams params;
    /// Unconditional kurtosis of the step-delta returns.
    double kurtosis = 3.0;
    /// Closed-form c factor of the beta relation (NaN when alpha == 0).
    double c_factor = 0.0;
    /// Sum of the roots of x^2 - m x + 1 = 0 that yields beta (NaN when alpha == 0).
    double m = 0.0;
};

/// Exact discretization of the limit diffusion at step `delta`:
///   lambda = exp(-theta delta), omega_d = omega/theta (1 - lambda),
///   beta the root in (0, 1) of the beta quadratic, alpha_d = lambda - beta.
/// Throws BetaQuadraticInfeasible when m <= 2 (very large theta * delta).
Discretization continuous_to_discrete(const ContinuousParams& c, StepLength delta);

/// Result of mapping one-frequency parameters back to the diffusion.
struct ContinuousRecovery {
    ContinuousParams params;
    /// Max componentwise relative error of continuous_to_discrete(params)
    /// against the inputs.
    double consistency_residual = 0.0;
    /// Human-readable warnings, e.g. InconsistentInput.
    std::vector<std::string> warnings;

    bool consistent() const noexcept { return warnings.empty(); }
};

constexpr double kConsistencyTolerance = 1e-6;

/// Inverse of continuous_to_discrete: theta from lambda, omega from the
/// long-run variance, alpha from the kurtosis map at fixed (theta, delta).
ContinuousRecovery discrete_to_continuous(const DiscreteGarchParams& p, double kappa,
                                          double mu = 0.0);

/// Limit unconditional kurtosis 3 theta / (theta - alpha^2).
double kappa_limit(const ContinuousParams& c);

/// Unconditional kurtosis of step-delta returns for the limit diffusion.
double discrete_kurtosis(const ContinuousParams& c, StepLength delta);

struct ConvergenceRow {
    StepLength delta{1.0};
    double omega_rate = 0.0;  ///< omega_d / delta
    double alpha_rate = 0.0;  ///< alpha_d / sqrt(delta)
    double theta_rate = 0.0;  ///< (1 - lambda) / delta
    double kappa_value = 0.0;
};

/// Rates of the discretized parameters for strictly decreasing steps.
std::vector<ConvergenceRow> convergence_table(const ContinuousParams& c,
                                              std::span<const StepLength> deltas);

/// 2^-from, ..., 2^-to.
std::vector<StepLength> dyadic_steps(int from_exponent, int to_exponent);

}  // namespace wgarch
