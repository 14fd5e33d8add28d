#include "wgarch/errors.hpp"

namespace wgarch {

std::string_view error_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonFiniteParameter: return "NonFiniteParameter";
        case ErrorCode::InvalidStepLength: return "InvalidStepLength";
        case ErrorCode::StationarityViolation: return "StationarityViolation";
        case ErrorCode::NonPositiveOmega: return "NonPositiveOmega";
        case ErrorCode::NegativeCoefficient: return "NegativeCoefficient";
        case ErrorCode::NonPositiveParameter: return "NonPositiveParameter";
        case ErrorCode::InfiniteKurtosis: return "InfiniteKurtosis";
        case ErrorCode::InvalidKurtosis: return "InvalidKurtosis";
        case ErrorCode::KurtosisOutOfRange: return "KurtosisOutOfRange";
        case ErrorCode::NotIntegerMultiple: return "NotIntegerMultiple";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::PriceOutOfBounds: return "PriceOutOfBounds";
        case ErrorCode::HorizonMismatch: return "HorizonMismatch";
        case ErrorCode::DriftMismatch: return "DriftMismatch";
        case ErrorCode::MissingFullPaths: return "MissingFullPaths";
        case ErrorCode::InsufficientPaths: return "InsufficientPaths";
        case ErrorCode::InsufficientData: return "InsufficientData";
        case ErrorCode::NoStationaryLaw: return "NoStationaryLaw";
        case ErrorCode::DegenerateAlpha: return "DegenerateAlpha";
        case ErrorCode::NoValidBetaRoot: return "NoValidBetaRoot";
        case ErrorCode::NoSolutionInBracket: return "NoSolutionInBracket";
        case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
        case ErrorCode::BetaQuadraticInfeasible: return "BetaQuadraticInfeasible";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::NegativeVarianceExplosion: return "NegativeVarianceExplosion";
        case ErrorCode::InvalidKurtosisPath: return "InvalidKurtosisPath";
    }
    return "UnknownError";
}

ErrorCategory error_category(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::DegenerateAlpha:
        case ErrorCode::NoValidBetaRoot:
        case ErrorCode::NoSolutionInBracket:
        case ErrorCode::ConvergenceFailure:
        case ErrorCode::BetaQuadraticInfeasible:
        case ErrorCode::NoConvergence:
            return ErrorCategory::Solver;
        case ErrorCode::NegativeVarianceExplosion:
        case ErrorCode::InvalidKurtosisPath:
            return ErrorCategory::Simulation;
        default:
            return ErrorCategory::Validation;
    }
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

}  // namespace wgarch
