#include "wgarch/pricing.hpp"

#include "wgarch/errors.hpp"
#include "wgarch/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace wgarch {

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double payoff(bool is_call, double s, double k) {
    return is_call ? std::max(s - k, 0.0) : std::max(k - s, 0.0);
}

}  // namespace

void validate_option(const OptionSpec& o) {
    const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(o.spot) || !positive(o.strike) || !positive(o.maturity)) {
        throw Error(ErrorCode::InvalidArgument, "spot, strike and maturity must be finite and > 0");
    }
    if (!std::isfinite(o.rate)) throw Error(ErrorCode::InvalidArgument, "rate must be finite");
}

double bs_price(const OptionSpec& o, double sigma) {
    validate_option(o);
    if (!std::isfinite(sigma) || sigma < 0.0) {
        throw Error(ErrorCode::InvalidArgument, "sigma must be finite and >= 0");
    }
    const double discount = std::exp(-o.rate * o.maturity);
    const double forward = o.spot * std::exp(o.rate * o.maturity);
    if (sigma == 0.0) return discount * payoff(o.is_call, forward, o.strike);
    const double total = sigma * std::sqrt(o.maturity);
    const double d1 = (std::log(forward / o.strike) + 0.5 * total * total) / total;
    const double d2 = d1 - total;
    if (o.is_call) return discount * (forward * normal_cdf(d1) - o.strike * normal_cdf(d2));
    return discount * (o.strike * normal_cdf(-d2) - forward * normal_cdf(-d1));
}

std::pair<double, double> price_bounds(const OptionSpec& o) {
    validate_option(o);
    const double discounted_strike = o.strike * std::exp(-o.rate * o.maturity);
    if (o.is_call) return {std::max(o.spot - discounted_strike, 0.0), o.spot};
    return {std::max(discounted_strike - o.spot, 0.0), discounted_strike};
}

double implied_vol(const OptionSpec& o, double price) {
    const auto [lower, upper] = price_bounds(o);
    if (!std::isfinite(price) || price <= lower || price >= upper) {
        throw Error(ErrorCode::PriceOutOfBounds,
                    "price " + std::to_string(price) + " outside (" + std::to_string(lower) + ", " +
                        std::to_string(upper) + ")");
    }
    const double at_min = bs_price(o, kMinImpliedVol);
    if (price <= at_min) return kMinImpliedVol;
    const double at_max = bs_price(o, kMaxImpliedVol);
    if (price > at_max) {
        throw Error(ErrorCode::NoConvergence, "price needs a volatility above 5");
    }
    const auto gap = [&](double sigma) { return bs_price(o, sigma) - price; };
    const auto root = numerics::bracketed_root(gap, kMinImpliedVol, kMaxImpliedVol, 300, 60);
    if (!root) throw Error(ErrorCode::NoConvergence, "implied-vol bracket search failed");
    double sigma = root->root;
    // Polish with a couple of Newton steps when vega allows it.
    for (int i = 0; i < 3 && std::abs(gap(sigma)) > 1e-12; ++i) {
        const double h = 1e-6 * std::max(sigma, 1e-3);
        const double vega = (gap(sigma + h) - gap(sigma - h)) / (2.0 * h);
        if (!(vega > 0.0)) break;
        const double next = sigma - gap(sigma) / vega;
        if (!(next > kMinImpliedVol && next < kMaxImpliedVol)) break;
        if (std::abs(gap(next)) >= std::abs(gap(sigma))) break;
        sigma = next;
    }
    return sigma;
}

McPrice mc_price(const PathSet& paths, const OptionSpec& o) {
    validate_option(o);
    const double horizon = paths.config.horizon;
    if (std::abs(horizon - o.maturity) > 1e-12 * std::max(1.0, o.maturity)) {
        throw Error(ErrorCode::HorizonMismatch, "paths end at " + std::to_string(horizon) +
                                                    ", option matures at " + std::to_string(o.maturity));
    }
    if (std::abs(paths.params.mu - o.rate) > 1e-15) {
        throw Error(ErrorCode::DriftMismatch, "paths were not simulated with mu = rate");
    }
    const std::size_t n = paths.terminal_log_prices.size();
    if (n == 0) throw Error(ErrorCode::InsufficientData, "empty path set");
    // Welford keeps the variance accurate for deep in-the-money payoffs.
    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double s = o.spot * std::exp(paths.terminal_log_prices[i]);
        const double value = payoff(o.is_call, s, o.strike);
        const double delta = value - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (value - mean);
    }
    const double discount = std::exp(-o.rate * o.maturity);
    const double var = n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
    return {discount * mean, discount * std::sqrt(var / static_cast<double>(n))};
}

SmileResult smile_from_paths(const PathSet& paths, std::span<const double> strikes,
                             const OptionSpec& o_template, const SmileOptions& options) {
    SmileResult result;
    result.maturity = o_template.maturity;
    result.diagnostics = paths.diagnostics;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (double strike : strikes) {
        OptionSpec o = o_template;
        o.strike = strike;
        if (options.out_of_the_money) {
            const double forward = o.spot * std::exp(o.rate * o.maturity);
            o.is_call = strike >= forward;
        }
        const McPrice mc = mc_price(paths, o);
        SmileRow row{strike, strike / o.spot, mc.price, mc.standard_error, nan, nan, nan};
        const auto invert = [&](double price) {
            try {
                return implied_vol(o, price);
            } catch (const Error&) {
                return nan;
            }
        };
        row.implied_vol = invert(mc.price);
        row.iv_lo = invert(mc.price - mc.standard_error);
        row.iv_hi = invert(mc.price + mc.standard_error);
        result.rows.push_back(row);
    }
    return result;
}

SmileResult smile(const ContinuousParams& c, const KurtosisSpec& k, const SimConfig& cfg,
                  std::span<const double> strikes, const OptionSpec& o_template,
                  const SmileOptions& options, const ExecutionOptions& exec) {
    validate_option(o_template);
    for (double strike : strikes) {
        if (!std::isfinite(strike) || strike <= 0.0) {
            throw Error(ErrorCode::InvalidArgument, "strikes must be finite and > 0");
        }
    }
    ContinuousParams risk_neutral = c;
    risk_neutral.mu = o_template.rate;
    SimConfig run = cfg;
    run.horizon = o_template.maturity;
    const PathSet paths = simulate(risk_neutral, k, run, exec);
    return smile_from_paths(paths, strikes, o_template, options);
}

std::vector<double> strike_grid(double spot, double lo_moneyness, double hi_moneyness,
                                std::size_t points) {
    if (!(std::isfinite(spot) && spot > 0.0 && lo_moneyness > 0.0 && hi_moneyness >= lo_moneyness &&
          std::isfinite(hi_moneyness)) ||
        points == 0) {
        throw Error(ErrorCode::InvalidArgument, "invalid strike grid");
    }
    std::vector<double> strikes(points);
    if (points == 1) {
        strikes[0] = spot * lo_moneyness;
        return strikes;
    }
    const double step = (hi_moneyness - lo_moneyness) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        strikes[i] = spot * (lo_moneyness + step * static_cast<double>(i));
    }
    return strikes;
}

}  // namespace wgarch
