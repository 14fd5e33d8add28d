#include "wgarch/simulate.hpp"

#include "wgarch/errors.hpp"
#include "wgarch/rng.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

namespace wgarch {

namespace {

// Per-step quantities shared by every path.
struct StepPlan {
    std::vector<double> kappa;         // clamped instantaneous kurtosis
    std::vector<double> vol_of_var;    // alpha sqrt(kappa - 1), Euler
    std::vector<double> garch_scale;   // sqrt((kappa - 1) / 2), GARCH-consistent
    std::uint64_t clamped_steps = 0;
};

StepPlan plan_steps(const ContinuousParams& c, const KurtosisSpec& k, const SimConfig& cfg) {
    StepPlan plan;
    const double dt = cfg.dt();
    plan.kappa.resize(cfg.n_steps);
    plan.vol_of_var.resize(cfg.n_steps);
    plan.garch_scale.resize(cfg.n_steps);
    for (std::size_t i = 0; i < cfg.n_steps; ++i) {
        const double tau = cfg.horizon - static_cast<double>(i) * dt;
        const double raw = k.raw(tau);
        if (raw < 3.0) {
            if (cfg.strict_kurtosis) {
                throw Error(ErrorCode::InvalidKurtosisPath,
                            "kappa(" + std::to_string(tau) + ") = " + std::to_string(raw) + " < 3");
            }
            ++plan.clamped_steps;
        }
        const double kappa = std::max(3.0, raw);
        plan.kappa[i] = kappa;
        plan.vol_of_var[i] = c.alpha * std::sqrt(kappa - 1.0);
        plan.garch_scale[i] = std::sqrt((kappa - 1.0) / 2.0);
    }
    return plan;
}

double draw_initial_variance(const InverseGammaLaw& law, const PathStream& stream) {
    if (law.degenerate) return law.mean;
    const double u = stream.uniform(0, PathStream::Domain::Initial);
    return law.scale / boost::math::gamma_p_inv(law.shape, u);
}

struct ChunkResult {
    std::uint64_t truncations = 0;
};

struct Workspace {
    const ContinuousParams& c;
    const SimConfig& cfg;
    const StepPlan& plan;
    const Discretization* garch;  // GARCH-consistent only
    const InverseGammaLaw* start_law;
    PathSet& out;
};

ChunkResult run_paths(const Workspace& ws, std::size_t first, std::size_t last) {
    const SimConfig& cfg = ws.cfg;
    const double dt = cfg.dt();
    const double sqrt_dt = std::sqrt(dt);
    const std::size_t width = cfg.n_steps + 1;
    const bool full = cfg.store_full_paths;
    ChunkResult result;

    for (std::size_t p = first; p < last; ++p) {
        const PathStream stream(cfg.seed, p);
        double v = ws.start_law ? draw_initial_variance(*ws.start_law, stream) : cfg.v0;
        double x = 0.0;
        double* xs = full ? ws.out.log_price_paths.data() + p * width : nullptr;
        double* vs = full ? ws.out.variance_paths.data() + p * width : nullptr;
        if (full) {
            xs[0] = x;
            vs[0] = v;
        }

        if (cfg.scheme == Scheme::DiffusionEuler) {
            const double omega = ws.c.omega;
            const double theta = ws.c.theta;
            const double mu = ws.c.mu;
            for (std::size_t i = 0; i < cfg.n_steps; ++i) {
                const auto [z1, z2] = stream.normal_pair(static_cast<std::uint32_t>(i));
                x += (mu - 0.5 * v) * dt + std::sqrt(v) * sqrt_dt * z1;
                double next = v + (omega - theta * v) * dt + ws.plan.vol_of_var[i] * v * sqrt_dt * z2;
                if (next < 0.0) {
                    next = 0.0;
                    ++result.truncations;
                }
                v = next;
                if (full) {
                    xs[i + 1] = x;
                    vs[i + 1] = v;
                }
            }
        } else {
            const DiscreteGarchParams& g = ws.garch->params;
            const double mu_dt = ws.c.mu * dt;
            for (std::size_t i = 0; i < cfg.n_steps; ++i) {
                const double xi = stream.normal_pair(static_cast<std::uint32_t>(i)).first;
                const double kappa = ws.plan.kappa[i];
                const double shaped = kappa == 3.0 ? xi : kurtotic_transform(xi, kappa);
                const double sq = shaped * shaped;
                x += mu_dt + std::sqrt(v * dt) * shaped;
                const double s = ws.plan.garch_scale[i];
                const double u = g.alpha * v * (1.0 - s + (s - 1.0) * sq);
                double next = g.omega + g.alpha * sq * v + g.beta * v + u;
                if (next < 0.0) {
                    next = 0.0;
                    ++result.truncations;
                }
                v = next;
                if (full) {
                    xs[i + 1] = x;
                    vs[i + 1] = v;
                }
            }
        }
        ws.out.terminal_log_prices[p] = x;
        ws.out.terminal_variances[p] = v;
    }
    return result;
}

}  // namespace

std::string_view scheme_name(Scheme s) noexcept {
    return s == Scheme::DiffusionEuler ? "diffusion_euler" : "garch_consistent";
}

Scheme parse_scheme(std::string_view name) {
    if (name == "diffusion_euler") return Scheme::DiffusionEuler;
    if (name == "garch_consistent") return Scheme::GarchConsistent;
    throw Error(ErrorCode::InvalidConfig, "unknown scheme '" + std::string(name) + "'");
}

void validate_sim_config(const SimConfig& cfg) {
    if (cfg.n_paths < 1 || cfg.n_steps < 1) {
        throw Error(ErrorCode::InvalidConfig, "n_paths and n_steps must be >= 1");
    }
    if (cfg.n_steps >= (std::size_t{1} << 32)) {
        throw Error(ErrorCode::InvalidConfig, "n_steps must be < 2^32");
    }
    if (!std::isfinite(cfg.horizon) || cfg.horizon <= 0.0) {
        throw Error(ErrorCode::InvalidConfig, "horizon must be finite and > 0");
    }
    if (!std::isfinite(cfg.v0) || cfg.v0 <= 0.0) {
        throw Error(ErrorCode::InvalidConfig, "v0 must be finite and > 0");
    }
}

std::span<const double> PathSet::log_price_path(std::size_t path) const {
    if (!has_full_paths()) throw Error(ErrorCode::MissingFullPaths, "full paths were not stored");
    const std::size_t width = config.n_steps + 1;
    return {log_price_paths.data() + path * width, width};
}

std::span<const double> PathSet::variance_path(std::size_t path) const {
    if (!has_full_paths()) throw Error(ErrorCode::MissingFullPaths, "full paths were not stored");
    const std::size_t width = config.n_steps + 1;
    return {variance_paths.data() + path * width, width};
}

double kurtotic_transform(double xi, double kappa) {
    if (!std::isfinite(kappa) || kappa < 3.0) {
        throw Error(ErrorCode::InvalidKurtosis, "kurtotic transform needs kappa >= 3");
    }
    if (kappa == 3.0 || xi == 0.0) return xi;
    const double nu = 4.0 + 6.0 / (kappa - 3.0);
    // Work in the lower tail, where Phi(-|xi|) keeps its relative precision.
    const double tail = 0.5 * std::erfc(std::abs(xi) / std::numbers::sqrt2);
    const boost::math::students_t_distribution<double> t(nu);
    const double magnitude = -boost::math::quantile(t, tail);
    const double standardized = magnitude * std::sqrt((nu - 2.0) / nu);
    return xi < 0.0 ? -standardized : standardized;
}

InnovationPair InnovationPair::from_normal(double xi) noexcept {
    return {xi, (xi * xi - 1.0) / std::numbers::sqrt2};
}

InverseGammaLaw stationary_variance_law(const ContinuousParams& c, const KurtosisSpec& k,
                                        const SimConfig& cfg) {
    const double kappa = k.instantaneous(cfg.horizon);
    InverseGammaLaw law;
    law.mean = c.omega / c.theta;
    if (c.alpha == 0.0) {
        law.degenerate = true;
        return law;
    }
    if (cfg.scheme == Scheme::DiffusionEuler) {
        // dV = (omega - theta V) dt + sigma V dB has an inverse-gamma stationary law.
        const double sigma_sq = c.alpha * c.alpha * (kappa - 1.0);
        law.shape = 1.0 + 2.0 * c.theta / sigma_sq;
        law.scale = 2.0 * c.omega / sigma_sq;
        return law;
    }
    // V+ = w + lambda V + a s V (xi~^2 - 1): closed recursion for E[V], E[V^2].
    const Discretization d = continuous_to_discrete(c, StepLength(cfg.dt()));
    const double lambda = d.params.lambda();
    const double w = d.params.omega;
    const double mean = w / (1.0 - lambda);
    const double noise = d.params.alpha * d.params.alpha * (kappa - 1.0) * (kappa - 1.0) / 2.0;
    const double contraction = 1.0 - lambda * lambda - noise;
    if (!(contraction > 0.0)) {
        throw Error(ErrorCode::NoStationaryLaw, "stationary second moment of V is infinite");
    }
    const double second = (w * w + 2.0 * w * lambda * mean) / contraction;
    const double variance = second - mean * mean;
    law.mean = mean;
    if (!(variance > 0.0)) {
        law.degenerate = true;
        return law;
    }
    law.shape = 2.0 + mean * mean / variance;
    law.scale = mean * (law.shape - 1.0);
    return law;
}

PathSet simulate(const ContinuousParams& c, const KurtosisSpec& k, const SimConfig& cfg,
                 const ExecutionOptions& exec) {
    validate_continuous(c);
    validate_kurtosis(k);
    validate_sim_config(cfg);

    const StepPlan plan = plan_steps(c, k, cfg);
    std::optional<Discretization> garch;
    if (cfg.scheme == Scheme::GarchConsistent) {
        garch = continuous_to_discrete(c, StepLength(cfg.dt()));
    }
    std::optional<InverseGammaLaw> start_law;
    if (cfg.stationary_start) start_law = stationary_variance_law(c, k, cfg);

    PathSet out;
    out.config = cfg;
    out.params = c;
    out.kurtosis = k;
    out.terminal_log_prices.assign(cfg.n_paths, 0.0);
    out.terminal_variances.assign(cfg.n_paths, 0.0);
    if (cfg.store_full_paths) {
        out.log_price_paths.assign(cfg.n_paths * (cfg.n_steps + 1), 0.0);
        out.variance_paths.assign(cfg.n_paths * (cfg.n_steps + 1), 0.0);
    }

    const Workspace ws{c, cfg, plan, garch ? &*garch : nullptr, start_law ? &*start_law : nullptr,
                       out};
    const std::size_t workers =
        std::clamp<std::size_t>(exec.threads == 0 ? 1 : exec.threads, 1, cfg.n_paths);
    std::vector<ChunkResult> chunks(workers);
    if (workers == 1) {
        chunks[0] = run_paths(ws, 0, cfg.n_paths);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t first = cfg.n_paths * w / workers;
            const std::size_t last = cfg.n_paths * (w + 1) / workers;
            pool.emplace_back([&, w, first, last] { chunks[w] = run_paths(ws, first, last); });
        }
    }

    out.diagnostics.total_steps = static_cast<std::uint64_t>(cfg.n_paths) * cfg.n_steps;
    out.diagnostics.clamped_kurtosis_steps = plan.clamped_steps * cfg.n_paths;
    for (const ChunkResult& r : chunks) out.diagnostics.truncations += r.truncations;
    if (out.diagnostics.truncation_rate() > kMaxTruncationRate) {
        throw Error(ErrorCode::NegativeVarianceExplosion,
                    "variance truncated on " + std::to_string(out.diagnostics.truncation_rate() * 100) +
                        "% of steps");
    }
    return out;
}

}  // namespace wgarch
