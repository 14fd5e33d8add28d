#include "wgarch/rng.hpp"

#include <cmath>
#include <numbers>

namespace wgarch {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}

}  // namespace

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

double to_open_unit(std::uint32_t hi, std::uint32_t lo) noexcept {
    // 52 bits keep (bits + 1/2) 2^-52 exactly representable, so 1 is never hit.
    const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 12;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-52;
}

PathStream::PathStream(std::uint64_t seed, std::uint64_t path) noexcept
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      path_lo_(static_cast<std::uint32_t>(path)),
      path_hi_(static_cast<std::uint32_t>(path >> 32)) {}

Philox4x32::Counter PathStream::raw(std::uint32_t index, Domain domain) const noexcept {
    return Philox4x32::block({index, static_cast<std::uint32_t>(domain), path_lo_, path_hi_},
                             key_);
}

std::pair<double, double> PathStream::normal_pair(std::uint32_t index,
                                                  Domain domain) const noexcept {
    const auto r = raw(index, domain);
    const double u1 = to_open_unit(r[0], r[1]);
    const double u2 = to_open_unit(r[2], r[3]);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

double PathStream::uniform(std::uint32_t index, Domain domain) const noexcept {
    const auto r = raw(index, domain);
    return to_open_unit(r[0], r[1]);
}

}  // namespace wgarch
