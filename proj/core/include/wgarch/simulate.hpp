#pragma once

#include "wgarch/limit.hpp"
#include "wgarch/params.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace wgarch {

enum class Scheme {
    /// Euler-Maruyama on the limit SDE with two independent normals per step
    /// and full truncation of the variance at zero.
    DiffusionEuler,
    /// The weak-GARCH recursion obtained by discretizing the limit at the
    /// simulation step, one normal per step and kurtotic innovations.
    GarchConsistent,
};

std::string_view scheme_name(Scheme s) noexcept;
Scheme parse_scheme(std::string_view name);

struct SimConfig {
    std::size_t n_paths = 1;
    std::size_t n_steps = 1;
    double horizon = 1.0;  ///< years
    std::uint64_t seed = 0;
    Scheme scheme = Scheme::DiffusionEuler;
    double v0 = 0.09;  ///< initial variance, used unless stationary_start
    bool store_full_paths = false;
    /// Draw V0 per path from an inverse-gamma law matching the scheme's
    /// stationary mean and second moment instead of starting at v0.
    bool stationary_start = false;
    /// Reject kurtosis paths that dip below 3 instead of clamping them.
    bool strict_kurtosis = false;

    double dt() const noexcept { return horizon / static_cast<double>(n_steps); }
};

void validate_sim_config(const SimConfig& cfg);

/// Only affects speed, never results.
struct ExecutionOptions {
    unsigned threads = 1;
};

struct SimulationDiagnostics {
    std::uint64_t total_steps = 0;
    std::uint64_t truncations = 0;
    /// Path-steps whose instantaneous kurtosis was raised to 3.
    std::uint64_t clamped_kurtosis_steps = 0;

    double truncation_rate() const noexcept {
        return total_steps == 0 ? 0.0
                                : static_cast<double>(truncations) / static_cast<double>(total_steps);
    }
};

/// Truncation share above which a simulation is rejected.
constexpr double kMaxTruncationRate = 0.05;

struct PathSet {
    SimConfig config;
    ContinuousParams params;
    KurtosisSpec kurtosis;
    /// ln(S_T / S_0), one per path.
    std::vector<double> terminal_log_prices;
    std::vector<double> terminal_variances;
    /// Row-major n_paths x (n_steps + 1) when config.store_full_paths.
    std::vector<double> log_price_paths;
    std::vector<double> variance_paths;
    SimulationDiagnostics diagnostics;

    std::size_t n_paths() const noexcept { return config.n_paths; }
    std::size_t n_steps() const noexcept { return config.n_steps; }
    bool has_full_paths() const noexcept { return !log_price_paths.empty(); }
    std::span<const double> log_price_path(std::size_t path) const;
    std::span<const double> variance_path(std::size_t path) const;
};

/// Monte Carlo paths of the weak GARCH diffusion. Bit-identical for a fixed
/// (params, kurtosis, config) whatever `exec.threads` is.
///
/// Throws NegativeVarianceExplosion when more than 5% of steps truncate and
/// InvalidKurtosisPath in strict mode when kappa(tau) < 3 anywhere.
PathSet simulate(const ContinuousParams& c, const KurtosisSpec& k, const SimConfig& cfg,
                 const ExecutionOptions& exec = {});

/// G^-1(F(xi)): maps a standard normal draw to a standardized Student-t draw
/// with kurtosis `kappa` (nu = 4 + 6 / (kappa - 3)). Identity at kappa = 3.
double kurtotic_transform(double xi, double kappa);

/// Second innovation derived from a single normal draw.
struct InnovationPair {
    double xi;
    double eta;  ///< (xi^2 - 1) / sqrt(2): mean 0, variance 1, uncorrelated with xi

    static InnovationPair from_normal(double xi) noexcept;
};

/// Inverse-gamma (shape, scale) matching the scheme's stationary mean and
/// second moment at the start-of-path kurtosis. Throws NoStationaryLaw when
/// the second moment is infinite.
struct InverseGammaLaw {
    double shape = 0.0;
    double scale = 0.0;
    bool degenerate = false;  ///< zero variance: V0 is the mean
    double mean = 0.0;
};
InverseGammaLaw stationary_variance_law(const ContinuousParams& c, const KurtosisSpec& k,
                                        const SimConfig& cfg);

}  // namespace wgarch
