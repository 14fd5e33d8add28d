#pragma once

#include "wgarch/params.hpp"
#include "wgarch/pricing.hpp"
#include "wgarch/simulate.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace wgarch::cli {

using Json = nlohmann::ordered_json;

/// Discrete parameters plus their unconditional kurtosis, one flat object:
/// {"delta", "omega", "alpha", "beta", "kappa"}.
struct DiscreteModel {
    DiscreteGarchParams params;
    double kappa = 3.0;
};

/// {"omega", "theta", "alpha", "mu"} plus optional "kappa", "kappa_a", "kappa_b".
struct ContinuousModel {
    ContinuousParams params;
    KurtosisSpec kurtosis;
};

struct MoneynessGrid {
    double lo = 0.7;
    double hi = 1.3;
    std::size_t points = 13;
};

struct OptionGrid {
    double spot = 100.0;
    double rate = 0.0;
    std::vector<double> maturities{1.0};
    MoneynessGrid moneyness;
    bool is_call = true;
    bool out_of_the_money = false;
};

/// Everything one simulate / price / smile run needs. Defaults are the
/// baseline smile setting: omega 0.0045, theta 0.05, alpha 0.1, mu = r = 0, V0 = 0.09,
/// 100000 paths of 1000 steps, constant instantaneous kurtosis 7.
struct ExperimentConfig {
    ContinuousModel model{{0.0045, 0.05, 0.1, 0.0}, KurtosisSpec::constant(7.0)};
    SimConfig simulation = default_simulation();
    OptionGrid options;
    std::string output_dir = "out";

    static SimConfig default_simulation();
};

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

DiscreteModel discrete_from_json(const Json& j);
Json to_json(const DiscreteModel& m);
ContinuousModel continuous_from_json(const Json& j);
Json to_json(const ContinuousParams& c);
Json to_json(const KurtosisSpec& k);

/// Missing sections and keys take their defaults; unknown keys are an error.
ExperimentConfig experiment_from_json(const Json& j);
Json to_json(const ExperimentConfig& cfg);
/// Throws wgarch::Error when any module validation fails.
void validate_experiment(const ExperimentConfig& cfg);

/// "0.25", "1/252" or "2e-3" as years.
double parse_step(const std::string& text);

}  // namespace wgarch::cli
