#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wgarch {

/// Broad class of a failure; the CLI maps each one to an exit code.
enum class ErrorCategory { Validation, Solver, Simulation };

enum class ErrorCode {
    // validation
    NonFiniteParameter,
    InvalidStepLength,
    StationarityViolation,
    NonPositiveOmega,
    NegativeCoefficient,
    NonPositiveParameter,
    InfiniteKurtosis,
    InvalidKurtosis,
    KurtosisOutOfRange,
    NotIntegerMultiple,
    InvalidArgument,
    InvalidConfig,
    PriceOutOfBounds,
    HorizonMismatch,
    DriftMismatch,
    MissingFullPaths,
    InsufficientPaths,
    InsufficientData,
    NoStationaryLaw,
    // solver
    DegenerateAlpha,
    NoValidBetaRoot,
    NoSolutionInBracket,
    ConvergenceFailure,
    BetaQuadraticInfeasible,
    NoConvergence,
    // simulation
    NegativeVarianceExplosion,
    InvalidKurtosisPath,
};

std::string_view error_name(ErrorCode code) noexcept;
ErrorCategory error_category(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail);

    ErrorCode code() const noexcept { return code_; }
    ErrorCategory category() const noexcept { return error_category(code_); }
    std::string_view name() const noexcept { return error_name(code_); }

private:
    ErrorCode code_;
};

}  // namespace wgarch
