#pragma once

#include <cstdint>
#include <functional>
#include <optional>

// Cancellation-free elementary pieces used by the aggregation and limit maps,
// plus a thin bracketed root-finding wrapper.
namespace wgarch::numerics {

/// x - 1 + exp(-x), accurate for small x (~ x^2 / 2).
double exp_neg_remainder(double x);

/// exp(y) - 1 - y, accurate for small |y|.
double expm1_minus_linear(double y);

/// log(1 - q) + q for 0 <= q < 1, accurate for small q (~ -q^2 / 2).
double log1m_plus_linear(double q);

/// n (1 - lambda) - (1 - lambda^n) for 0 < lambda < 1, n >= 1.
double aggregation_gap(double lambda, double n);

/// 3x e^-x - 2e^-x + 2.5 e^-2x - 0.5, which behaves like x^2 - 1.5 x^3 near 0.
double beta_feasibility_core(double x);

struct RootResult {
    double root;
    std::uintmax_t iterations;
};

/// TOMS 748 on [lo, hi]. Requires f(lo) and f(hi) of opposite sign (or one of
/// them zero); returns std::nullopt if the sign check fails or the iteration
/// budget is exhausted. Terminates when the bracket is `bits` bits wide.
std::optional<RootResult> bracketed_root(const std::function<double(double)>& f, double lo,
                                         double hi, std::uintmax_t max_iterations = 200,
                                         int bits = 50);

}  // namespace wgarch::numerics
