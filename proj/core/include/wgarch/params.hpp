#pragma once

#include <optional>

namespace wgarch {

/// Sampling interval in years. Always finite and strictly positive.
class StepLength {
public:
    explicit StepLength(double years);

    double years() const noexcept { return years_; }

    friend bool operator==(StepLength, StepLength) = default;

private:
    double years_;
};

/// Weak GARCH(1,1) parameters at one sampling frequency, annualized:
///   h_k = omega + alpha * eps_k^2 / delta + beta * h_{k-1}.
struct DiscreteGarchParams {
    StepLength delta{1.0};
    double omega = 0.0;
    double alpha = 0.0;
    double beta = 0.0;

    /// Persistence alpha + beta.
    double lambda() const noexcept { return alpha + beta; }
};

/// Coefficients of the limit diffusion
///   dS/S = mu dt + sqrt(V) dB1,  dV = (omega - theta V) dt + alpha sqrt(kappa_t - 1) V dB2.
struct ContinuousParams {
    double omega = 0.0;
    double theta = 0.0;
    double alpha = 0.0;
    double mu = 0.0;

    double long_run_variance() const noexcept { return omega / theta; }
};

/// Kurtosis inputs of an experiment.
///
/// `unconditional` is either an explicit value (> 3 when alpha > 0) or empty,
/// meaning "implied": derived from the continuous parameters as
/// 3 theta / (theta - alpha^2). The instantaneous kurtosis is affine in the
/// time remaining to the horizon, kappa(tau) = a + b tau, floored at 3.
struct KurtosisSpec {
    std::optional<double> unconditional;
    double a = 3.0;
    double b = 0.0;

    static KurtosisSpec constant(double kappa) { return {std::nullopt, kappa, 0.0}; }
    static KurtosisSpec affine(double a, double b) { return {std::nullopt, a, b}; }

    /// Unclamped a + b tau.
    double raw(double tau) const noexcept { return a + b * tau; }
    /// max(3, a + b tau).
    double instantaneous(double tau) const noexcept;
    bool is_gaussian() const noexcept { return a == 3.0 && b == 0.0; }
    /// Unconditional kurtosis: the explicit value, else the implied limit of `c`.
    double unconditional_or_implied(const ContinuousParams& c) const;
};

/// Throws wgarch::Error unless omega > 0, alpha >= 0, beta >= 0 and
/// 0 < alpha + beta < 1. Returns `p` unchanged.
DiscreteGarchParams validate_discrete(const DiscreteGarchParams& p);

/// Throws wgarch::Error unless omega > 0, theta > 0, alpha >= 0 and
/// alpha^2 < theta (finite limit kurtosis). Returns `p` unchanged.
ContinuousParams validate_continuous(const ContinuousParams& p);

/// Checks an explicit unconditional value (finite, > 3 if given) and that the
/// affine coefficients are finite.
KurtosisSpec validate_kurtosis(const KurtosisSpec& k);

}  // namespace wgarch
