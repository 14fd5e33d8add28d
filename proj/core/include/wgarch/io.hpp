#pragma once

#include "wgarch/limit.hpp"
#include "wgarch/pricing.hpp"
#include "wgarch/simulate.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace wgarch::io {

/// Shortest round-trip decimal form; "nan", "inf" and "-inf" otherwise.
std::string format_double(double v);

void write_convergence_csv(std::ostream& out, std::span<const ConvergenceRow> rows);
/// path_id,log_S_T,V_T; log_S_T = log_spot + ln(S_T / S_0).
void write_terminal_csv(std::ostream& out, const PathSet& paths, double log_spot = 0.0);
void write_smile_csv(std::ostream& out, const SmileResult& smile);

constexpr std::uint32_t kWgpsVersion = 1;

/// Full-path matrices as stored on disk: log prices, then variances, each
/// n_paths x (n_steps + 1) row-major.
struct WgpsFile {
    std::uint32_t n_paths = 0;
    std::uint32_t n_steps = 0;
    std::vector<double> log_prices;
    std::vector<double> variances;
};

/// "WGPS", version, n_paths, n_steps as little-endian u32, then little-endian
/// f64 values. Throws MissingFullPaths when the paths were not stored and
/// InvalidArgument when the dimensions exceed u32.
void write_wgps(std::ostream& out, const PathSet& paths);
/// Throws InvalidConfig on a bad magic, version or truncated payload.
WgpsFile read_wgps(std::istream& in);

/// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace wgarch::io
