#include "wgarch/io.hpp"

#include "wgarch/errors.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>

namespace wgarch::io {

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
    const std::array<char, 4> bytes{static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                                    static_cast<char>((v >> 16) & 0xff),
                                    static_cast<char>((v >> 24) & 0xff)};
    out.write(bytes.data(), bytes.size());
}

std::uint32_t get_u32(std::istream& in) {
    std::array<unsigned char, 4> b{};
    if (!in.read(reinterpret_cast<char*>(b.data()), b.size())) {
        throw Error(ErrorCode::InvalidConfig, "truncated WGPS header");
    }
    return std::uint32_t{b[0]} | std::uint32_t{b[1]} << 8 | std::uint32_t{b[2]} << 16 |
           std::uint32_t{b[3]} << 24;
}

void put_doubles(std::ostream& out, std::span<const double> values) {
    std::array<char, 8 * 512> buffer{};
    std::size_t used = 0;
    for (double v : values) {
        const auto bits = std::bit_cast<std::uint64_t>(v);
        for (int i = 0; i < 8; ++i) buffer[used++] = static_cast<char>((bits >> (8 * i)) & 0xff);
        if (used == buffer.size()) {
            out.write(buffer.data(), static_cast<std::streamsize>(used));
            used = 0;
        }
    }
    out.write(buffer.data(), static_cast<std::streamsize>(used));
}

void get_doubles(std::istream& in, std::vector<double>& values) {
    std::array<unsigned char, 8> b{};
    for (double& v : values) {
        if (!in.read(reinterpret_cast<char*>(b.data()), b.size())) {
            throw Error(ErrorCode::InvalidConfig, "truncated WGPS payload");
        }
        std::uint64_t bits = 0;
        for (int i = 7; i >= 0; --i) bits = bits << 8 | b[static_cast<std::size_t>(i)];
        v = std::bit_cast<double>(bits);
    }
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return {buf.data(), res.ptr};
}

void write_convergence_csv(std::ostream& out, std::span<const ConvergenceRow> rows) {
    out << "delta,omega_rate,alpha_rate,theta_rate,kappa\n";
    for (const ConvergenceRow& r : rows) {
        out << format_double(r.delta.years()) << ',' << format_double(r.omega_rate) << ','
            << format_double(r.alpha_rate) << ',' << format_double(r.theta_rate) << ','
            << format_double(r.kappa_value) << '\n';
    }
}

void write_terminal_csv(std::ostream& out, const PathSet& paths, double log_spot) {
    out << "path_id,log_S_T,V_T\n";
    for (std::size_t i = 0; i < paths.terminal_log_prices.size(); ++i) {
        out << i << ',' << format_double(log_spot + paths.terminal_log_prices[i]) << ','
            << format_double(paths.terminal_variances[i]) << '\n';
    }
}

void write_smile_csv(std::ostream& out, const SmileResult& smile) {
    out << "strike,moneyness,price,price_se,implied_vol,iv_lo,iv_hi\n";
    for (const SmileRow& r : smile.rows) {
        out << format_double(r.strike) << ',' << format_double(r.moneyness) << ','
            << format_double(r.price) << ',' << format_double(r.price_se) << ','
            << format_double(r.implied_vol) << ',' << format_double(r.iv_lo) << ','
            << format_double(r.iv_hi) << '\n';
    }
}

void write_wgps(std::ostream& out, const PathSet& paths) {
    if (!paths.has_full_paths()) {
        throw Error(ErrorCode::MissingFullPaths, "full paths were not stored");
    }
    constexpr auto kMax = std::numeric_limits<std::uint32_t>::max();
    if (paths.n_paths() > kMax || paths.n_steps() > kMax) {
        throw Error(ErrorCode::InvalidArgument, "path dimensions exceed the WGPS header range");
    }
    out.write("WGPS", 4);
    put_u32(out, kWgpsVersion);
    put_u32(out, static_cast<std::uint32_t>(paths.n_paths()));
    put_u32(out, static_cast<std::uint32_t>(paths.n_steps()));
    put_doubles(out, paths.log_price_paths);
    put_doubles(out, paths.variance_paths);
}

WgpsFile read_wgps(std::istream& in) {
    std::array<char, 4> magic{};
    if (!in.read(magic.data(), magic.size()) || std::memcmp(magic.data(), "WGPS", 4) != 0) {
        throw Error(ErrorCode::InvalidConfig, "not a WGPS file");
    }
    const std::uint32_t version = get_u32(in);
    if (version != kWgpsVersion) {
        throw Error(ErrorCode::InvalidConfig, "unsupported WGPS version " + std::to_string(version));
    }
    WgpsFile file;
    file.n_paths = get_u32(in);
    file.n_steps = get_u32(in);
    const std::size_t count = std::size_t{file.n_paths} * (std::size_t{file.n_steps} + 1);
    file.log_prices.resize(count);
    file.variances.resize(count);
    get_doubles(in, file.log_prices);
    get_doubles(in, file.variances);
    return file;
}

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    std::array<char, 17> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + 16, hash, 16);
    std::string hex(buf.data(), res.ptr);
    return std::string(16 - hex.size(), '0') + hex;
}

}  // namespace wgarch::io
