#include "cli.hpp"

#include "config.hpp"
#include "svg.hpp"

#include "wgarch/aggregation.hpp"
#include "wgarch/errors.hpp"
#include "wgarch/io.hpp"
#include "wgarch/limit.hpp"
#include "wgarch/pricing.hpp"
#include "wgarch/simulate.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>

namespace wgarch::cli {

namespace {

namespace fs = std::filesystem;
using io::format_double;

struct Globals {
    std::string config;
    std::string out;
    std::uint64_t seed = 0;
    bool seed_given = false;
    unsigned threads = 1;
};

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

const std::string& require_config(const Globals& g) {
    if (g.config.empty()) throw Error(ErrorCode::InvalidConfig, "--config is required for this command");
    return g.config;
}

fs::path prepare_dir(const std::string& dir) {
    fs::path p = dir.empty() ? fs::path("out") : fs::path(dir);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) throw Error(ErrorCode::InvalidConfig, "cannot create output directory '" + p.string() + "': " + ec.message());
    return p;
}

std::ofstream open_output(const fs::path& path, bool binary = false) {
    std::ofstream f(path, binary ? std::ios::binary : std::ios::out);
    if (!f) throw Error(ErrorCode::InvalidConfig, "cannot write '" + path.string() + "'");
    return f;
}

std::string describe(const DiscreteGarchParams& p, double kappa) {
    return "delta=" + format_double(p.delta.years()) + " omega=" + format_double(p.omega) +
           " alpha=" + format_double(p.alpha) + " beta=" + format_double(p.beta) + " kappa=" + format_double(kappa);
}

std::string describe(const ContinuousParams& c) {
    return "omega=" + format_double(c.omega) + " theta=" + format_double(c.theta) + " alpha=" + format_double(c.alpha) +
           " mu=" + format_double(c.mu);
}

// Experiment config with the command-line overrides applied.
ExperimentConfig load_experiment(const Globals& g) {
    ExperimentConfig cfg = g.config.empty() ? ExperimentConfig{} : experiment_from_json(read_json_file(g.config));
    if (g.seed_given) cfg.simulation.seed = g.seed;
    if (!g.out.empty()) cfg.output_dir = g.out;
    validate_experiment(cfg);
    return cfg;
}

// Hash of everything that determines the results; the output directory does not.
std::string config_hash(const ExperimentConfig& cfg) {
    Json j = to_json(cfg);
    j.erase("output_dir");
    return io::fnv1a_hex(j.dump());
}

Json diagnostics_json(const SimulationDiagnostics& d) {
    return {{"total_steps", d.total_steps},
            {"truncations", d.truncations},
            {"truncation_rate", d.truncation_rate()},
            {"clamped_kurtosis_steps", d.clamped_kurtosis_steps}};
}

Json manifest_base(const std::string& command, const ExperimentConfig& cfg, const Globals& g) {
    Json m;
    m["command"] = command;
    m["seed"] = cfg.simulation.seed;
    m["threads"] = g.threads;
    m["config_hash"] = config_hash(cfg);
    return m;
}

std::string maturity_tag(double t) { return "T" + format_double(t); }

OptionSpec option_template(const ExperimentConfig& cfg, double maturity) {
    return {cfg.options.spot, cfg.options.spot, maturity, cfg.options.rate, cfg.options.is_call};
}

std::vector<double> strikes_of(const ExperimentConfig& cfg) {
    const auto& g = cfg.options.moneyness;
    return strike_grid(cfg.options.spot, g.lo, g.hi, g.points);
}

int cmd_convert(const Globals& g, const std::string& to_delta, bool coarser, std::ostream& out) {
    const DiscreteModel in = discrete_from_json(read_json_file(require_config(g)));
    const StepLength target(parse_step(to_delta));
    const AggregationResult r =
        coarser ? aggregate(in.params, in.kappa, target) : disaggregate(in.params, in.kappa, target);
    const char* name = coarser ? "aggregate" : "disaggregate";
    const fs::path file = prepare_dir(g.out) / (std::string(name) + ".json");
    write_json_file(file, to_json(DiscreteModel{r.params, r.kurtosis}));
    out << name << ": " << describe(r.params, r.kurtosis) << " -> " << file.string() << '\n';
    return kExitSuccess;
}

int cmd_limit(const Globals& g, double mu, bool sweep, std::ostream& out, std::ostream& err) {
    const DiscreteModel in = discrete_from_json(read_json_file(require_config(g)));
    const ContinuousRecovery rec = discrete_to_continuous(in.params, in.kappa, mu);
    for (const auto& w : rec.warnings) err << "warning: " << w << '\n';
    const fs::path dir = prepare_dir(g.out);
    Json j = to_json(rec.params);
    j["kappa"] = kappa_limit(rec.params);
    write_json_file(dir / "continuous.json", j);
    out << "limit: " << describe(rec.params) << " kappa=" << format_double(kappa_limit(rec.params))
        << " residual=" << format_double(rec.consistency_residual);
    if (sweep) {
        const auto steps = dyadic_steps(4, 16);
        const auto rows = convergence_table(rec.params, steps);
        auto f = open_output(dir / "convergence.csv");
        io::write_convergence_csv(f, rows);
        out << " sweep=" << rows.size() << " rows";
    }
    out << " -> " << dir.string() << '\n';
    return kExitSuccess;
}

int cmd_discretize(const Globals& g, const std::string& delta, std::ostream& out) {
    const ContinuousModel in = continuous_from_json(read_json_file(require_config(g)));
    const Discretization d = continuous_to_discrete(in.params, StepLength(parse_step(delta)));
    const fs::path file = prepare_dir(g.out) / "discrete.json";
    write_json_file(file, to_json(DiscreteModel{d.params, d.kurtosis}));
    out << "discretize: " << describe(d.params, d.kurtosis) << " -> " << file.string() << '\n';
    return kExitSuccess;
}

int cmd_simulate(const Globals& g, std::ostream& out) {
    const ExperimentConfig cfg = load_experiment(g);
    const fs::path dir = prepare_dir(cfg.output_dir);
    const Stopwatch clock;
    const PathSet paths = simulate(cfg.model.params, cfg.model.kurtosis, cfg.simulation, {g.threads});
    const double sim_seconds = clock.seconds();
    {
        auto f = open_output(dir / "terminal.csv");
        io::write_terminal_csv(f, paths, std::log(cfg.options.spot));
    }
    if (paths.has_full_paths()) {
        auto f = open_output(dir / "paths.wgps", true);
        io::write_wgps(f, paths);
    }
    Json manifest = manifest_base("simulate", cfg, g);
    manifest["runs"] = Json::array({{{"label", "simulate"},
                                     {"scheme", std::string(scheme_name(cfg.simulation.scheme))},
                                     {"seconds", sim_seconds},
                                     {"diagnostics", diagnostics_json(paths.diagnostics)}}});
    manifest["elapsed_seconds"] = clock.seconds();
    write_json_file(dir / "manifest.json", manifest);
    write_json_file(dir / "config.json", to_json(cfg));
    out << "simulate: " << paths.n_paths() << " paths x " << paths.n_steps()
        << " steps, truncation rate " << format_double(paths.diagnostics.truncation_rate()) << " -> "
        << dir.string() << '\n';
    return kExitSuccess;
}

int cmd_price(const Globals& g, std::ostream& out) {
    const ExperimentConfig cfg = load_experiment(g);
    const fs::path dir = prepare_dir(cfg.output_dir);
    const Stopwatch clock;
    const auto strikes = strikes_of(cfg);
    Json runs = Json::array();
    auto f = open_output(dir / "prices.csv");
    f << "maturity,strike,moneyness,price,price_se,implied_vol\n";
    for (double t : cfg.options.maturities) {
        const Stopwatch run_clock;
        const SmileResult s = smile(cfg.model.params, cfg.model.kurtosis, cfg.simulation, strikes,
                                    option_template(cfg, t), {cfg.options.out_of_the_money}, {g.threads});
        for (const auto& r : s.rows) {
            f << format_double(t) << ',' << format_double(r.strike) << ',' << format_double(r.moneyness) << ','
              << format_double(r.price) << ',' << format_double(r.price_se) << ',' << format_double(r.implied_vol)
              << '\n';
        }
        runs.push_back({{"label", "price"},
                        {"maturity", t},
                        {"seconds", run_clock.seconds()},
                        {"diagnostics", diagnostics_json(s.diagnostics)}});
    }
    f.close();
    Json manifest = manifest_base("price", cfg, g);
    manifest["runs"] = runs;
    manifest["elapsed_seconds"] = clock.seconds();
    write_json_file(dir / "manifest.json", manifest);
    write_json_file(dir / "config.json", to_json(cfg));
    out << "price: " << cfg.options.maturities.size() << " maturities x " << strikes.size() << " strikes -> "
        << (dir / "prices.csv").string() << '\n';
    return kExitSuccess;
}

int cmd_smile(const Globals& g, std::ostream& out) {
    const ExperimentConfig cfg = load_experiment(g);
    const fs::path dir = prepare_dir(cfg.output_dir);
    const Stopwatch clock;
    const auto strikes = strikes_of(cfg);
    static const char* const palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

    std::vector<SmileCurve> curves;
    Json runs = Json::array();
    std::size_t index = 0;
    for (double t : cfg.options.maturities) {
        const std::string color = palette[index++ % std::size(palette)];
        const OptionSpec o = option_template(cfg, t);
        const SmileOptions opts{cfg.options.out_of_the_money};
        const auto run = [&](const KurtosisSpec& k, const std::string& label, const std::string& file) {
            const Stopwatch run_clock;
            SmileResult s = smile(cfg.model.params, k, cfg.simulation, strikes, o, opts, {g.threads});
            auto f = open_output(dir / file);
            io::write_smile_csv(f, s);
            runs.push_back({{"label", label},
                            {"maturity", t},
                            {"file", file},
                            {"seconds", run_clock.seconds()},
                            {"diagnostics", diagnostics_json(s.diagnostics)}});
            return s;
        };
        const std::string tag = maturity_tag(t);
        SmileResult weak = run(cfg.model.kurtosis, "weak_garch", "smile_" + tag + ".csv");
        // Nelson: the kappa = 3 slice, same seed.
        SmileResult nelson = run(KurtosisSpec::constant(3.0), "nelson", "smile_nelson_" + tag + ".csv");
        curves.push_back({"weak GARCH " + tag, color, false, std::move(weak.rows)});
        curves.push_back({"Nelson " + tag, color, true, std::move(nelson.rows)});
    }
    {
        auto f = open_output(dir / "smile.svg");
        f << render_smile_svg(curves, "Implied volatility smile: weak GARCH vs Nelson (kappa = 3)");
    }
    Json manifest = manifest_base("smile", cfg, g);
    manifest["runs"] = runs;
    manifest["elapsed_seconds"] = clock.seconds();
    write_json_file(dir / "manifest.json", manifest);
    write_json_file(dir / "config.json", to_json(cfg));
    out << "smile: " << cfg.options.maturities.size() << " maturities, " << strikes.size() << " strikes, "
        << format_double(clock.seconds()) << " s -> " << dir.string() << '\n';
    return kExitSuccess;
}

int exit_code(ErrorCategory c) {
    switch (c) {
        case ErrorCategory::Validation: return kExitValidation;
        case ErrorCategory::Solver: return kExitSolver;
        case ErrorCategory::Simulation: return kExitSimulation;
    }
    return kExitInternal;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Weak GARCH aggregation, diffusion limit and option smiles", "wgarch"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--config", g.config, "JSON input file");
    app.add_option("--out", g.out, "output directory");
    auto* seed_opt = app.add_option("--seed", g.seed, "overrides the configured seed");
    app.add_option("--threads", g.threads, "worker threads (speed only)")->check(CLI::Range(1u, 4096u));

    std::string to_delta;
    double mu = 0.0;
    bool sweep = false;

    auto* agg = app.add_subcommand("aggregate", "discrete params to a coarser step");
    agg->add_option("--to-delta", to_delta, "target step in years, e.g. 5 or 1/52")->required();
    auto* dis = app.add_subcommand("disaggregate", "discrete params to a finer step");
    dis->add_option("--to-delta", to_delta, "target step in years")->required();
    auto* lim = app.add_subcommand("limit", "discrete params to the diffusion limit");
    lim->add_option("--mu", mu, "drift of the limit");
    lim->add_flag("--sweep", sweep, "also write convergence.csv over steps 2^-4..2^-16");
    auto* disc = app.add_subcommand("discretize", "diffusion params to a discrete step");
    disc->add_option("--to-delta,--delta", to_delta, "step in years")->required();
    auto* sim = app.add_subcommand("simulate", "simulate paths of an experiment");
    auto* price = app.add_subcommand("price", "price the option grid of an experiment");
    auto* smile_cmd = app.add_subcommand("smile", "weak GARCH and Nelson smiles with plot");
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitSuccess : kExitValidation;
    }
    g.seed_given = seed_opt->count() > 0;

    try {
        if (agg->parsed()) return cmd_convert(g, to_delta, true, out);
        if (dis->parsed()) return cmd_convert(g, to_delta, false, out);
        if (lim->parsed()) return cmd_limit(g, mu, sweep, out, err);
        if (disc->parsed()) return cmd_discretize(g, to_delta, out);
        if (sim->parsed()) return cmd_simulate(g, out);
        if (price->parsed()) return cmd_price(g, out);
        if (smile_cmd->parsed()) return cmd_smile(g, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code(e.category());
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    err << "error: no command\n";
    return kExitValidation;
}

}  // namespace wgarch::cli
