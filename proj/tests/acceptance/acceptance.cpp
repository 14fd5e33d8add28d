// Acceptance suite: one PASS/FAIL line per criterion. Exit status 0 only when
// every criterion passes. --quick shrinks the Monte Carlo criteria for CI.

#include "cli.hpp"
#include "config.hpp"

#include "wgarch/aggregation.hpp"
#include "wgarch/diagnostics.hpp"
#include "wgarch/errors.hpp"
#include "wgarch/limit.hpp"
#include "wgarch/pricing.hpp"
#include "wgarch/simulate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace wgarch;

namespace {

const ContinuousParams kBaseline{0.0045, 0.05, 0.1, 0.0};
constexpr double kAtmCall = 11.923538474048503592;  // BS(100, 100, 1y, r=0, 30%)

struct Settings {
    bool quick = false;
    fs::path work;
};

struct Outcome {
    bool passed = false;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// Fine models with lambda in [0.5, 0.99), kept only when their 8-step
// aggregate still has a beta root in [0, 1).
struct Model {
    DiscreteGarchParams p;
    double kappa;
};

Model random_model(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (;;) {
        const double lambda = 0.5 + 0.49 * u(rng);
        const double alpha = std::min((0.02 + 0.2 * u(rng)) * (1.0 - lambda) + 0.01 + 0.1 * u(rng), 0.9 * lambda);
        const double omega = 1e-6 + 1e-3 * u(rng);
        const double delta = 1.0 / (1.0 + 500.0 * u(rng));
        const double denom = 1.0 - lambda * lambda - 2.0 * alpha * alpha;
        const double kappa = denom > 0.05 ? 3.0 * (1.0 - lambda * lambda) / denom + 0.5 * u(rng) : 3.5;
        const Model m{{StepLength(delta), omega, alpha, lambda - alpha}, kappa};
        try {
            aggregate(m.p, m.kappa, StepLength(8 * delta));
            return m;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NoValidBetaRoot) throw;
        }
    }
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Largest componentwise error: relative for omega and kurtosis, absolute for alpha and beta.
double distance(const AggregationResult& a, const AggregationResult& b) {
    return std::max({rel(a.params.omega, b.params.omega), std::abs(a.params.alpha - b.params.alpha),
                     std::abs(a.params.beta - b.params.beta), rel(a.kurtosis, b.kurtosis)});
}

Outcome semigroup(const Settings&) {
    std::mt19937_64 rng(20240611);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const Model m = random_model(rng);
        const double d = m.p.delta.years();
        const auto two = aggregate(m.p, m.kappa, StepLength(2 * d));
        const auto via_two = aggregate(two.params, two.kurtosis, StepLength(4 * d));
        worst = std::max(worst, distance(via_two, aggregate(m.p, m.kappa, StepLength(4 * d))));
    }
    return {worst <= 1e-10, "100 models, max error " + fmt("%.2e", worst) + " (tol 1e-10)"};
}

Outcome round_trip(const Settings&) {
    std::mt19937_64 rng(77);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const Model m = random_model(rng);
        for (long n : {2L, 4L}) {
            const auto coarse = aggregate(m.p, m.kappa, StepLength(n * m.p.delta.years()));
            const auto fine = disaggregate(coarse.params, coarse.kurtosis, m.p.delta);
            const auto again = aggregate(fine.params, fine.kurtosis, coarse.params.delta);
            worst = std::max(worst, distance(again, coarse));
        }
    }
    return {worst <= 1e-8, "100 models x n in {2,4}, max error " + fmt("%.2e", worst) + " (tol 1e-8)"};
}

Outcome commutation(const Settings&) {
    const double delta = 1.0 / 252.0;
    const Discretization fine = continuous_to_discrete(kBaseline, StepLength(delta));
    double worst = 0.0;
    for (long n : {2L, 3L, 5L, 10L}) {
        const StepLength coarse(n * delta);
        const Discretization direct = continuous_to_discrete(kBaseline, coarse);
        const auto aggregated = aggregate(fine.params, fine.kurtosis, coarse);
        worst = std::max(worst, distance(aggregated, {direct.params, direct.kurtosis, std::nullopt}));
    }
    return {worst <= 1e-9, "delta 1/252, n in {2,3,5,10}, max error " + fmt("%.2e", worst) + " (tol 1e-9)"};
}

Outcome rates(const Settings&) {
    const auto rows = convergence_table(kBaseline, dyadic_steps(4, 16));
    const double kappa_target = kappa_limit(kBaseline);
    bool monotone = true;
    std::vector<double> prev(4, INFINITY);
    std::vector<double> last;
    for (const auto& r : rows) {
        const std::vector<double> errs{rel(r.alpha_rate, kBaseline.alpha), rel(r.theta_rate, kBaseline.theta),
                                       rel(r.omega_rate, kBaseline.omega), rel(r.kappa_value, kappa_target)};
        for (std::size_t i = 0; i < errs.size(); ++i) {
            monotone &= errs[i] < prev[i];
        }
        prev = errs;
        last = errs;
    }
    const bool finest = last[0] < 0.005 && last[1] < 0.005 && last[2] < 0.005 && last[3] < 0.005;
    const bool limit_ok = std::abs(kappa_target - 3.75) < 1e-12;
    return {monotone && finest && limit_ok,
            "at 2^-16 rel errors alpha " + fmt("%.3e", last[0]) + ", theta " + fmt("%.3e", last[1]) + ", omega " +
                fmt("%.3e", last[2]) + ", kappa " + fmt("%.3e", last[3]) + " (kappa limit " +
                fmt("%.6f", kappa_target) + ")" + (monotone ? "" : ", NOT monotone")};
}

SimConfig garch_slice(std::size_t paths, std::size_t steps, std::uint64_t seed) {
    SimConfig cfg;
    cfg.n_paths = paths;
    cfg.n_steps = steps;
    cfg.horizon = 1e-3 * static_cast<double>(steps);
    cfg.seed = seed;
    cfg.scheme = Scheme::GarchConsistent;
    cfg.store_full_paths = true;
    return cfg;
}

// The scheme is a weak GARCH with the discretized parameters only at kappa = 3.
Outcome orthogonality(const Settings& s) {
    const SimConfig cfg = garch_slice(s.quick ? 20000 : 100000, 40, 5);
    const PathSet paths = simulate(kBaseline, KurtosisSpec::constant(3.0), cfg);
    const DiscreteGarchParams p = continuous_to_discrete(kBaseline, StepLength(cfg.dt())).params;
    const BlpReport good = blp_orthogonality_check(paths, p);
    DiscreteGarchParams wrong = p;
    wrong.beta -= 0.05;
    const BlpReport bad = blp_orthogonality_check(paths, wrong);
    return {good.passed() && !bad.passed(),
            std::to_string(cfg.n_paths) + " paths, max |z| " + fmt("%.2f", good.max_abs_z()) +
                " (<= 4), beta-0.05 control max |z| " + fmt("%.1f", bad.max_abs_z()) + " (> 4)"};
}

Outcome kurtosis_chain(const Settings& s) {
    SimConfig cfg = garch_slice(s.quick ? 20000 : 100000, 100, 6);
    cfg.stationary_start = true;
    const PathSet paths = simulate(kBaseline, KurtosisSpec::constant(3.0), cfg);
    const Discretization d = continuous_to_discrete(kBaseline, StepLength(cfg.dt()));
    const KurtosisEstimate one = sample_kurtosis(paths, 1);
    const double z1 = (one.kurtosis - d.kurtosis) / one.standard_error;
    const double target10 = aggregate(d.params, d.kurtosis, StepLength(10 * cfg.dt())).kurtosis;
    const KurtosisEstimate ten = sample_kurtosis(paths, 10);
    const double z10 = (ten.kurtosis - target10) / ten.standard_error;
    // What the simulated recursion has exactly: Gaussian strong GARCH with the discretized parameters.
    const double l2 = d.params.lambda() * d.params.lambda();
    const double strong = 3.0 * (1.0 - l2) / (1.0 - l2 - 2.0 * d.params.alpha * d.params.alpha);
    return {std::abs(z1) <= 4.0 && std::abs(z10) <= 4.0,
            "1-step " + fmt("%.4f", one.kurtosis) + " +- " + fmt("%.4f", one.standard_error) + " vs " +
                fmt("%.4f", d.kurtosis) + " (z " + fmt("%.2f", z1) + "; scheme's own " + fmt("%.4f", strong) +
                "), 10-step " + fmt("%.4f", ten.kurtosis) + " vs " + fmt("%.4f", target10) + " (z " +
                fmt("%.2f", z10) + ")"};
}

Outcome flat_vol(const Settings& s) {
    ContinuousParams flat = kBaseline;
    flat.alpha = 0.0;
    SimConfig cfg = cli::ExperimentConfig::default_simulation();
    if (s.quick) cfg.n_paths = 10000;
    const std::vector<double> strike{100.0};
    const SmileResult r = smile(flat, KurtosisSpec::constant(3.0), cfg, strike, OptionSpec{});
    const SmileRow& row = r.rows.front();
    const double z = (row.price - kAtmCall) / row.price_se;
    const bool in_band = row.iv_lo <= 0.3 && 0.3 <= row.iv_hi;
    return {std::abs(z) <= 3.0 && in_band,
            "price " + fmt("%.4f", row.price) + " +- " + fmt("%.4f", row.price_se) + " vs " + fmt("%.4f", kAtmCall) +
                " (z " + fmt("%.2f", z) + "), iv " + fmt("%.4f", row.implied_vol) + " band [" +
                fmt("%.4f", row.iv_lo) + ", " + fmt("%.4f", row.iv_hi) + "]"};
}

// --- smile criteria through the command-line front end ---

std::vector<SmileRow> read_smile(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw Error(ErrorCode::InvalidArgument, "missing " + file.string());
    std::string line;
    std::getline(in, line);
    std::vector<SmileRow> rows;
    while (std::getline(in, line)) {
        std::istringstream cells(line);
        std::vector<double> v;
        for (std::string c; std::getline(cells, c, ',');) v.push_back(std::stod(c));
        if (v.size() != 7) throw Error(ErrorCode::InvalidArgument, "bad row in " + file.string());
        rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6]});
    }
    return rows;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

const SmileRow& at_moneyness(const std::vector<SmileRow>& rows, double m) {
    for (const auto& r : rows) {
        if (std::abs(r.moneyness - m) < 1e-9) return r;
    }
    throw Error(ErrorCode::InvalidArgument, "moneyness " + fmt("%g", m) + " not on the grid");
}

double iv_se(const SmileRow& r) { return 0.5 * (r.iv_hi - r.iv_lo); }

void run_smile(const Settings& s, const cli::Json& config, const fs::path& out, unsigned threads) {
    fs::create_directories(out);
    const fs::path file = out / "input.json";
    std::ofstream(file) << config.dump(2);
    std::ostringstream sink;
    std::ostringstream err;
    const int code = cli::run_cli({"smile", "--config", file.string(), "--out", out.string(), "--threads",
                                   std::to_string(threads)},
                                  sink, err);
    if (code != 0) throw Error(ErrorCode::InvalidArgument, "smile exited " + std::to_string(code) + ": " + err.str());
    (void)s;
}

cli::Json smile_config(const Settings& s, double kappa_a, double kappa_b, std::vector<double> maturities) {
    return {{"kurtosis", {{"kappa_a", kappa_a}, {"kappa_b", kappa_b}}},
            {"simulation", {{"n_paths", s.quick ? 10000 : 100000}, {"n_steps", 1000}}},
            {"options",
             {{"maturities", maturities},
              {"out_of_the_money", true},
              {"moneyness", {{"lo", 0.7}, {"hi", 1.3}, {"points", 13}}}}}};
}

Outcome smile_ordering(const Settings& s) {
    const fs::path kurtotic = s.work / "fig_a";
    const fs::path gaussian = s.work / "fig_a_kappa3";
    run_smile(s, smile_config(s, 7.0, 0.0, {1.0}), kurtotic, 1);
    run_smile(s, smile_config(s, 3.0, 0.0, {1.0}), gaussian, 1);
    const auto weak = read_smile(kurtotic / "smile_T1.csv");
    const auto nelson = read_smile(kurtotic / "smile_nelson_T1.csv");
    bool ordered = true;
    std::string detail;
    for (double m : {0.8, 1.2}) {
        const SmileRow& a = at_moneyness(weak, m);
        const SmileRow& b = at_moneyness(nelson, m);
        const double gap = a.implied_vol - b.implied_vol;
        const double se = std::hypot(iv_se(a), iv_se(b));
        ordered &= gap > 2.0 * se;
        detail += "m=" + fmt("%.1f", m) + " iv7-iv3 " + fmt("%+.5f", gap) + " (2 SE " + fmt("%.5f", 2 * se) + "); ";
    }
    // kappa = 3 through the weak-GARCH path must be the Nelson run, bit for bit.
    const bool coincide = slurp(gaussian / "smile_T1.csv") == slurp(kurtotic / "smile_nelson_T1.csv");
    detail += coincide ? "kappa=3 run equals Nelson run" : "kappa=3 run DIFFERS from Nelson run";
    return {ordered && coincide, detail};
}

Outcome wing_steepness(const Settings& s) {
    const fs::path out = s.work / "fig_b";
    run_smile(s, smile_config(s, 7.0, -2.0, {0.5, 1.0, 1.5}), out, 1);
    std::vector<double> steep;
    std::vector<double> se;
    std::string detail;
    for (const char* tag : {"T0.5", "T1", "T1.5"}) {
        const auto rows = read_smile(out / (std::string("smile_") + tag + ".csv"));
        const SmileRow& lo = at_moneyness(rows, 0.8);
        const SmileRow& hi = at_moneyness(rows, 1.2);
        steep.push_back(std::abs(lo.implied_vol - hi.implied_vol));
        se.push_back(std::hypot(iv_se(lo), iv_se(hi)));
        detail += std::string(tag) + " steepness " + fmt("%.5f", steep.back()) + " +- " + fmt("%.5f", se.back()) + "; ";
    }
    bool ok = true;
    for (std::size_t i = 0; i + 1 < steep.size(); ++i) {
        for (std::size_t j = i + 1; j < steep.size(); ++j) {
            ok &= steep[i] - steep[j] > std::hypot(se[i], se[j]);
        }
    }
    return {ok, detail + (ok ? "strictly decreasing" : "NOT strictly decreasing beyond SE")};
}

Outcome determinism(const Settings& s) {
    const cli::Json config = smile_config(s, 7.0, 0.0, {1.0});
    std::vector<fs::path> dirs;
    for (unsigned t : {1u, 4u, 16u}) {
        dirs.push_back(s.work / ("threads_" + std::to_string(t)));
        run_smile(s, config, dirs.back(), t);
    }
    bool same = true;
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(dirs.front())) {
        const auto name = entry.path().filename();
        if (name.extension() != ".csv" && name.extension() != ".svg") continue;
        ++files;
        const std::string reference = slurp(entry.path());
        for (std::size_t i = 1; i < dirs.size(); ++i) same &= slurp(dirs[i] / name) == reference;
    }
    // Also the output of the criterion-8 run, made independently.
    same &= slurp(s.work / "fig_a" / "smile_T1.csv") == slurp(dirs.front() / "smile_T1.csv");
    return {same && files >= 3, std::to_string(files) + " output files compared across threads 1, 4, 16"};
}

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Outcome(const Settings&)> run;
};

}  // namespace

int main(int argc, char** argv) {
    Settings s;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--quick") {
            s.quick = true;
        } else {
            std::cerr << "usage: wgarch_acceptance [--quick]\n";
            return 2;
        }
    }
    s.work = fs::temp_directory_path() / ("wgarch_acceptance_" + std::to_string(std::random_device{}()));
    fs::create_directories(s.work);

    const std::vector<Criterion> criteria{
        {1, "aggregation semigroup", 1.0, semigroup},
        {2, "disaggregation round trip", 5.0, round_trip},
        {3, "discretization commutes with aggregation", 1.0, commutation},
        {4, "diffusion-limit convergence rates", 1.0, rates},
        {5, "weak-GARCH orthogonality", 120.0, orthogonality},
        {6, "kurtosis chain", 120.0, kurtosis_chain},
        {7, "flat-vol pricing oracle", 60.0, flat_vol},
        {8, "smile ordering kappa 7 vs Nelson", s.quick ? 30.0 : 300.0, smile_ordering},
        {9, "wing steepness across maturities", 600.0, wing_steepness},
        {10, "thread-count determinism", 900.0, determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run(s);
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = seconds <= c.budget_seconds;
        const bool passed = o.passed && in_time;
        failures += passed ? 0 : 1;
        std::cout << "criterion " << c.id << (c.id < 10 ? "  " : " ") << (passed ? "PASS" : "FAIL") << "  " << c.name
                  << ": " << o.detail << " [" << fmt("%.1f", seconds) << " s"
                  << (in_time ? "" : ", over budget " + fmt("%.0f", c.budget_seconds) + " s") << "]" << std::endl;
    }
    std::error_code ec;
    fs::remove_all(s.work, ec);
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
              << (s.quick ? " (quick mode)" : "") << std::endl;
    return failures == 0 ? 0 : 1;
}
