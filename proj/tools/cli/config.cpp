#include "config.hpp"

#include "wgarch/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <string_view>

namespace wgarch::cli {

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); }

void require_object(const Json& j, std::string_view where) {
    if (!j.is_object()) config_error(std::string(where) + " must be a JSON object");
}

void reject_unknown(const Json& j, std::initializer_list<std::string_view> allowed, std::string_view where) {
    for (const auto& item : j.items()) {
        bool known = false;
        for (std::string_view key : allowed) known |= item.key() == key;
        if (!known) config_error("unknown key '" + item.key() + "' in " + std::string(where));
    }
}

double number(const Json& j, const char* key, std::string_view where) {
    if (!j.contains(key)) config_error(std::string("missing key '") + key + "' in " + std::string(where));
    const Json& v = j.at(key);
    if (!v.is_number()) config_error(std::string("'") + key + "' in " + std::string(where) + " must be a number");
    return v.get<double>();
}

double number_or(const Json& j, const char* key, double fallback, std::string_view where) {
    return j.contains(key) ? number(j, key, where) : fallback;
}

std::uint64_t count_or(const Json& j, const char* key, std::uint64_t fallback, std::string_view where) {
    if (!j.contains(key)) return fallback;
    const Json& v = j.at(key);
    if (!v.is_number_unsigned()) {
        config_error(std::string("'") + key + "' in " + std::string(where) + " must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

bool flag_or(const Json& j, const char* key, bool fallback, std::string_view where) {
    if (!j.contains(key)) return fallback;
    const Json& v = j.at(key);
    if (!v.is_boolean()) config_error(std::string("'") + key + "' in " + std::string(where) + " must be a boolean");
    return v.get<bool>();
}

void read_kurtosis(const Json& j, KurtosisSpec& k, std::string_view where) {
    if (j.contains("kappa")) k.unconditional = number(j, "kappa", where);
    k.a = number_or(j, "kappa_a", k.a, where);
    k.b = number_or(j, "kappa_b", k.b, where);
}

}  // namespace

SimConfig ExperimentConfig::default_simulation() {
    SimConfig s;
    s.n_paths = 100000;
    s.n_steps = 1000;
    s.horizon = 1.0;
    s.seed = 20240101;
    s.scheme = Scheme::DiffusionEuler;
    s.v0 = 0.09;
    return s;
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) config_error("cannot open '" + path.string() + "'");
    try {
        // No comments: reproducibility over convenience.
        return Json::parse(in, nullptr, true, false);
    } catch (const Json::parse_error& e) {
        config_error("'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::InvalidConfig, "cannot write '" + path.string() + "'");
    out << j.dump(2) << '\n';
}

DiscreteModel discrete_from_json(const Json& j) {
    constexpr std::string_view where = "discrete parameters";
    require_object(j, where);
    reject_unknown(j, {"delta", "omega", "alpha", "beta", "kappa"}, where);
    DiscreteModel m{{StepLength(number(j, "delta", where)), number(j, "omega", where), number(j, "alpha", where),
                     number(j, "beta", where)},
                    number(j, "kappa", where)};
    validate_discrete(m.params);
    return m;
}

Json to_json(const DiscreteModel& m) {
    Json j;
    j["delta"] = m.params.delta.years();
    j["omega"] = m.params.omega;
    j["alpha"] = m.params.alpha;
    j["beta"] = m.params.beta;
    j["kappa"] = m.kappa;
    return j;
}

ContinuousModel continuous_from_json(const Json& j) {
    constexpr std::string_view where = "continuous parameters";
    require_object(j, where);
    reject_unknown(j, {"omega", "theta", "alpha", "mu", "kappa", "kappa_a", "kappa_b"}, where);
    ContinuousModel m;
    m.params = {number(j, "omega", where), number(j, "theta", where), number(j, "alpha", where),
                number_or(j, "mu", 0.0, where)};
    read_kurtosis(j, m.kurtosis, where);
    validate_continuous(m.params);
    validate_kurtosis(m.kurtosis);
    return m;
}

Json to_json(const ContinuousParams& c) {
    Json j;
    j["omega"] = c.omega;
    j["theta"] = c.theta;
    j["alpha"] = c.alpha;
    j["mu"] = c.mu;
    return j;
}

Json to_json(const KurtosisSpec& k) {
    Json j;
    if (k.unconditional) j["kappa"] = *k.unconditional;
    j["kappa_a"] = k.a;
    j["kappa_b"] = k.b;
    return j;
}

ExperimentConfig experiment_from_json(const Json& j) {
    require_object(j, "experiment config");
    reject_unknown(j, {"continuous", "kurtosis", "simulation", "options", "output_dir"}, "experiment config");
    ExperimentConfig cfg;

    if (j.contains("continuous")) {
        const Json& c = j.at("continuous");
        constexpr std::string_view where = "'continuous'";
        require_object(c, where);
        reject_unknown(c, {"omega", "theta", "alpha", "mu"}, where);
        auto& p = cfg.model.params;
        p = {number_or(c, "omega", p.omega, where), number_or(c, "theta", p.theta, where),
             number_or(c, "alpha", p.alpha, where), number_or(c, "mu", p.mu, where)};
    }
    if (j.contains("kurtosis")) {
        const Json& k = j.at("kurtosis");
        constexpr std::string_view where = "'kurtosis'";
        require_object(k, where);
        reject_unknown(k, {"kappa", "kappa_a", "kappa_b"}, where);
        read_kurtosis(k, cfg.model.kurtosis, where);
    }
    if (j.contains("simulation")) {
        const Json& s = j.at("simulation");
        constexpr std::string_view where = "'simulation'";
        require_object(s, where);
        reject_unknown(s,
                       {"n_paths", "n_steps", "horizon", "seed", "scheme", "v0", "store_full_paths",
                        "stationary_start", "strict_kurtosis"},
                       where);
        auto& sim = cfg.simulation;
        sim.n_paths = count_or(s, "n_paths", sim.n_paths, where);
        sim.n_steps = count_or(s, "n_steps", sim.n_steps, where);
        sim.horizon = number_or(s, "horizon", sim.horizon, where);
        sim.seed = count_or(s, "seed", sim.seed, where);
        if (s.contains("scheme")) {
            if (!s.at("scheme").is_string()) config_error("'scheme' must be a string");
            sim.scheme = parse_scheme(s.at("scheme").get<std::string>());
        }
        sim.v0 = number_or(s, "v0", sim.v0, where);
        sim.store_full_paths = flag_or(s, "store_full_paths", sim.store_full_paths, where);
        sim.stationary_start = flag_or(s, "stationary_start", sim.stationary_start, where);
        sim.strict_kurtosis = flag_or(s, "strict_kurtosis", sim.strict_kurtosis, where);
    }
    if (j.contains("options")) {
        const Json& o = j.at("options");
        constexpr std::string_view where = "'options'";
        require_object(o, where);
        reject_unknown(o, {"spot", "rate", "maturities", "moneyness", "is_call", "out_of_the_money"}, where);
        auto& opt = cfg.options;
        opt.spot = number_or(o, "spot", opt.spot, where);
        opt.rate = number_or(o, "rate", opt.rate, where);
        if (o.contains("maturities")) {
            const Json& m = o.at("maturities");
            if (!m.is_array() || m.empty()) config_error("'maturities' must be a non-empty array");
            opt.maturities.clear();
            for (const Json& v : m) {
                if (!v.is_number()) config_error("'maturities' entries must be numbers");
                opt.maturities.push_back(v.get<double>());
            }
        }
        if (o.contains("moneyness")) {
            const Json& g = o.at("moneyness");
            constexpr std::string_view grid_where = "'options.moneyness'";
            require_object(g, grid_where);
            reject_unknown(g, {"lo", "hi", "points"}, grid_where);
            opt.moneyness.lo = number_or(g, "lo", opt.moneyness.lo, grid_where);
            opt.moneyness.hi = number_or(g, "hi", opt.moneyness.hi, grid_where);
            opt.moneyness.points = count_or(g, "points", opt.moneyness.points, grid_where);
        }
        opt.is_call = flag_or(o, "is_call", opt.is_call, where);
        opt.out_of_the_money = flag_or(o, "out_of_the_money", opt.out_of_the_money, where);
    }
    if (j.contains("output_dir")) {
        if (!j.at("output_dir").is_string()) config_error("'output_dir' must be a string");
        cfg.output_dir = j.at("output_dir").get<std::string>();
    }
    validate_experiment(cfg);
    return cfg;
}

Json to_json(const ExperimentConfig& cfg) {
    Json j;
    j["continuous"] = to_json(cfg.model.params);
    j["kurtosis"] = to_json(cfg.model.kurtosis);
    const SimConfig& s = cfg.simulation;
    j["simulation"] = {{"n_paths", s.n_paths},
                       {"n_steps", s.n_steps},
                       {"horizon", s.horizon},
                       {"seed", s.seed},
                       {"scheme", std::string(scheme_name(s.scheme))},
                       {"v0", s.v0},
                       {"store_full_paths", s.store_full_paths},
                       {"stationary_start", s.stationary_start},
                       {"strict_kurtosis", s.strict_kurtosis}};
    const OptionGrid& o = cfg.options;
    j["options"] = {{"spot", o.spot},
                    {"rate", o.rate},
                    {"maturities", o.maturities},
                    {"moneyness", {{"lo", o.moneyness.lo}, {"hi", o.moneyness.hi}, {"points", o.moneyness.points}}},
                    {"is_call", o.is_call},
                    {"out_of_the_money", o.out_of_the_money}};
    j["output_dir"] = cfg.output_dir;
    return j;
}

void validate_experiment(const ExperimentConfig& cfg) {
    validate_continuous(cfg.model.params);
    validate_kurtosis(cfg.model.kurtosis);
    validate_sim_config(cfg.simulation);
    for (double t : cfg.options.maturities) {
        validate_option({cfg.options.spot, cfg.options.spot, t, cfg.options.rate, cfg.options.is_call});
    }
    strike_grid(cfg.options.spot, cfg.options.moneyness.lo, cfg.options.moneyness.hi, cfg.options.moneyness.points);
}

double parse_step(const std::string& text) {
    const auto parse = [&](std::string_view s) {
        double v = 0.0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
            throw Error(ErrorCode::InvalidArgument, "cannot parse step '" + text + "'");
        }
        return v;
    };
    const std::string_view view(text);
    const auto slash = view.find('/');
    const double value = slash == std::string_view::npos
                             ? parse(view)
                             : parse(view.substr(0, slash)) / parse(view.substr(slash + 1));
    return StepLength(value).years();
}

}  // namespace wgarch::cli
