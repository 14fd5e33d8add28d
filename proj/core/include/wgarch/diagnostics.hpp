#pragma once

#include "wgarch/params.hpp"
#include "wgarch/simulate.hpp"

#include <cstddef>
#include <vector>

namespace wgarch {

/// One sample moment E[(eps_{k+1}^2 / delta - h_k) eps_{k-lag}^r].
struct BlpMoment {
    int power = 0;
    int lag = 0;
    double mean = 0.0;
    double standard_error = 0.0;

    double z() const noexcept { return standard_error > 0.0 ? mean / standard_error : 0.0; }
};

struct BlpReport {
    std::vector<BlpMoment> moments;  ///< r-major, lags 0..4
    double tolerance_z = 4.0;

    double max_abs_z() const noexcept;
    bool passed() const noexcept { return max_abs_z() <= tolerance_z; }
};

/// Rebuilds h_k = omega + alpha eps_k^2 / delta + beta h_{k-1} (h_0 = V_0)
/// from the stored log-price increments and tests the 15 orthogonality
/// moments (r = 0, 1, 2; lags 0..4). Standard errors come from the spread of
/// per-path averages.
///
/// Throws MissingFullPaths, InsufficientPaths (< 10000 paths) and
/// InvalidArgument when p.delta differs from the simulation step.
BlpReport blp_orthogonality_check(const PathSet& paths, const DiscreteGarchParams& p);

struct KurtosisEstimate {
    double kurtosis = 0.0;
    double standard_error = 0.0;
    std::size_t n_returns = 0;
};

/// Pooled kurtosis of non-overlapping `aggregation`-step returns, with a
/// leave-one-path-out jackknife standard error.
///
/// Throws MissingFullPaths, InsufficientData when n_paths * n_steps < 1e6 and
/// InvalidArgument when fewer than one block fits in a path.
KurtosisEstimate sample_kurtosis(const PathSet& paths, std::size_t aggregation = 1);

}  // namespace wgarch
