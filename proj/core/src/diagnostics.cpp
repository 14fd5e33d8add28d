#include "wgarch/diagnostics.hpp"

#include "wgarch/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace wgarch {

namespace {

constexpr int kMaxLag = 4;
constexpr std::size_t kMinBlpPaths = 10000;
constexpr double kMinKurtosisSamples = 1e6;

void require_full_paths(const PathSet& paths) {
    if (!paths.has_full_paths()) {
        throw Error(ErrorCode::MissingFullPaths, "diagnostic needs stored full paths");
    }
}

}  // namespace

double BlpReport::max_abs_z() const noexcept {
    double worst = 0.0;
    for (const BlpMoment& m : moments) worst = std::max(worst, std::abs(m.z()));
    return worst;
}

BlpReport blp_orthogonality_check(const PathSet& paths, const DiscreteGarchParams& p) {
    require_full_paths(paths);
    const std::size_t n_paths = paths.n_paths();
    const std::size_t n_steps = paths.n_steps();
    if (n_paths < kMinBlpPaths) {
        throw Error(ErrorCode::InsufficientPaths,
                    std::to_string(n_paths) + " paths, need at least " + std::to_string(kMinBlpPaths));
    }
    const double dt = paths.config.dt();
    if (std::abs(p.delta.years() - dt) > 1e-9 * dt) {
        throw Error(ErrorCode::InvalidArgument, "parameter step does not match the simulation step");
    }
    if (n_steps < static_cast<std::size_t>(kMaxLag) + 2) {
        throw Error(ErrorCode::InsufficientData, "paths too short for lag-4 moments");
    }

    constexpr std::size_t kCount = 3 * (kMaxLag + 1);
    // Per-path averages, then their mean and spread across paths.
    std::array<double, kCount> sum{};
    std::array<double, kCount> sum_sq{};
    const double drift = paths.params.mu * dt;
    std::vector<double> eps(n_steps + 1);
    std::vector<double> h(n_steps + 1);

    for (std::size_t path = 0; path < n_paths; ++path) {
        const auto x = paths.log_price_path(path);
        const auto v = paths.variance_path(path);
        for (std::size_t k = 1; k <= n_steps; ++k) eps[k] = x[k] - x[k - 1] - drift;
        h[0] = v[0];
        for (std::size_t k = 1; k <= n_steps; ++k) {
            h[k] = p.omega + p.alpha * eps[k] * eps[k] / dt + p.beta * h[k - 1];
        }
        std::array<double, kCount> acc{};
        const std::size_t first = kMaxLag + 1;
        for (std::size_t k = first; k < n_steps; ++k) {
            const double surprise = eps[k + 1] * eps[k + 1] / dt - h[k];
            for (int lag = 0; lag <= kMaxLag; ++lag) {
                const double e = eps[k - lag];
                acc[lag] += surprise;
                acc[(kMaxLag + 1) + lag] += surprise * e;
                acc[2 * (kMaxLag + 1) + lag] += surprise * e * e;
            }
        }
        const double used = static_cast<double>(n_steps - first);
        for (std::size_t j = 0; j < kCount; ++j) {
            const double avg = acc[j] / used;
            sum[j] += avg;
            sum_sq[j] += avg * avg;
        }
    }

    BlpReport report;
    const double n = static_cast<double>(n_paths);
    for (int r = 0; r <= 2; ++r) {
        for (int lag = 0; lag <= kMaxLag; ++lag) {
            const std::size_t j = static_cast<std::size_t>(r * (kMaxLag + 1) + lag);
            const double mean = sum[j] / n;
            const double var = std::max(0.0, (sum_sq[j] - n * mean * mean) / (n - 1.0));
            report.moments.push_back({r, lag, mean, std::sqrt(var / n)});
        }
    }
    return report;
}

KurtosisEstimate sample_kurtosis(const PathSet& paths, std::size_t aggregation) {
    require_full_paths(paths);
    const std::size_t n_paths = paths.n_paths();
    const std::size_t n_steps = paths.n_steps();
    if (static_cast<double>(n_paths) * static_cast<double>(n_steps) < kMinKurtosisSamples) {
        throw Error(ErrorCode::InsufficientData, "need n_paths * n_steps >= 1e6");
    }
    if (aggregation == 0 || aggregation > n_steps) {
        throw Error(ErrorCode::InvalidArgument, "aggregation must be in [1, n_steps]");
    }
    if (n_paths < 2) throw Error(ErrorCode::InsufficientData, "jackknife needs two paths");
    const std::size_t blocks = n_steps / aggregation;

    // Centre on a pilot mean so the power sums stay well conditioned.
    double pilot = 0.0;
    for (std::size_t path = 0; path < n_paths; ++path) {
        const auto x = paths.log_price_path(path);
        pilot += x[blocks * aggregation] - x[0];
    }
    pilot /= static_cast<double>(n_paths * blocks);

    struct Sums {
        double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    };
    std::vector<Sums> per_path(n_paths);
    Sums total;
    for (std::size_t path = 0; path < n_paths; ++path) {
        const auto x = paths.log_price_path(path);
        Sums s;
        for (std::size_t b = 0; b < blocks; ++b) {
            const double r = x[(b + 1) * aggregation] - x[b * aggregation] - pilot;
            const double r2 = r * r;
            s.s1 += r;
            s.s2 += r2;
            s.s3 += r2 * r;
            s.s4 += r2 * r2;
        }
        per_path[path] = s;
        total.s1 += s.s1;
        total.s2 += s.s2;
        total.s3 += s.s3;
        total.s4 += s.s4;
    }

    const auto kurtosis_of = [](const Sums& s, double count) {
        const double m = s.s1 / count;
        const double r2 = s.s2 / count;
        const double r3 = s.s3 / count;
        const double r4 = s.s4 / count;
        const double m2 = r2 - m * m;
        const double m4 = r4 - 4.0 * m * r3 + 6.0 * m * m * r2 - 3.0 * m * m * m * m;
        return m4 / (m2 * m2);
    };

    const double count = static_cast<double>(n_paths * blocks);
    KurtosisEstimate out;
    out.kurtosis = kurtosis_of(total, count);
    out.n_returns = n_paths * blocks;

    const double leave_out_count = count - static_cast<double>(blocks);
    std::vector<double> loo(n_paths);
    double loo_mean = 0.0;
    for (std::size_t path = 0; path < n_paths; ++path) {
        const Sums& s = per_path[path];
        const Sums rest{total.s1 - s.s1, total.s2 - s.s2, total.s3 - s.s3, total.s4 - s.s4};
        loo[path] = kurtosis_of(rest, leave_out_count);
        loo_mean += loo[path];
    }
    loo_mean /= static_cast<double>(n_paths);
    double spread = 0.0;
    for (double k : loo) spread += (k - loo_mean) * (k - loo_mean);
    const double n = static_cast<double>(n_paths);
    out.standard_error = std::sqrt((n - 1.0) / n * spread);
    return out;
}

}  // namespace wgarch
