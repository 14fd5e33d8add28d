#pragma once

#include "wgarch/params.hpp"
#include "wgarch/simulate.hpp"

#include <span>
#include <vector>

namespace wgarch {

struct OptionSpec {
    double spot = 100.0;
    double strike = 100.0;
    double maturity = 1.0;  ///< years
    double rate = 0.0;      ///< continuously compounded
    bool is_call = true;
};

/// Throws InvalidArgument unless spot, strike and maturity are finite and > 0
/// and the rate is finite.
void validate_option(const OptionSpec& o);

/// Black-Scholes value; sigma = 0 gives the discounted intrinsic value.
double bs_price(const OptionSpec& o, double sigma);

/// Strict no-arbitrage band (lower, upper) for the option price.
std::pair<double, double> price_bounds(const OptionSpec& o);

constexpr double kMinImpliedVol = 1e-4;
constexpr double kMaxImpliedVol = 5.0;

/// sigma in [1e-4, 5] with bs_price(o, sigma) = price to 1e-10. Prices inside
/// the band but below bs_price(o, 1e-4) return 1e-4.
///
/// Throws PriceOutOfBounds outside the open no-arbitrage band and
/// NoConvergence when the price needs sigma > 5.
double implied_vol(const OptionSpec& o, double price);

struct McPrice {
    double price = 0.0;
    double standard_error = 0.0;
};

/// Discounted mean payoff over the terminal prices spot * exp(log_S_T).
/// Throws HorizonMismatch when the paths do not end at o.maturity and
/// DriftMismatch when they were not simulated with mu = o.rate.
McPrice mc_price(const PathSet& paths, const OptionSpec& o);

struct SmileRow {
    double strike = 0.0;
    double moneyness = 0.0;
    double price = 0.0;
    double price_se = 0.0;
    double implied_vol = 0.0;  ///< NaN when inversion fails
    double iv_lo = 0.0;
    double iv_hi = 0.0;
};

struct SmileResult {
    double maturity = 0.0;
    std::vector<SmileRow> rows;
    SimulationDiagnostics diagnostics;
};

struct SmileOptions {
    /// Price puts below the spot and calls above it (the template's is_call is
    /// then ignored). Implied vols are identical by parity; the OTM side has
    /// the smaller Monte Carlo error.
    bool out_of_the_money = false;
};

/// Implied-vol smile from one simulation (common random numbers across
/// strikes). The simulation runs with mu = o_template.rate and horizon =
/// o_template.maturity, overriding c.mu and cfg.horizon.
SmileResult smile(const ContinuousParams& c, const KurtosisSpec& k, const SimConfig& cfg,
                  std::span<const double> strikes, const OptionSpec& o_template,
                  const SmileOptions& options = {}, const ExecutionOptions& exec = {});

/// Prices an existing path set across strikes.
SmileResult smile_from_paths(const PathSet& paths, std::span<const double> strikes,
                             const OptionSpec& o_template, const SmileOptions& options = {});

/// Evenly spaced moneyness grid times spot.
std::vector<double> strike_grid(double spot, double lo_moneyness, double hi_moneyness,
                                std::size_t points);

}  // namespace wgarch
