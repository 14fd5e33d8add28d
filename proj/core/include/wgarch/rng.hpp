#pragma once

#include <array>
#include <cstdint>
#include <utility>

namespace wgarch {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Stateless:
/// every output block is a pure function of (counter, key).
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter block(Counter counter, Key key) noexcept;
};

/// Draws for one simulated path. Block i of a domain is
/// Philox(counter = {i, domain, path_lo, path_hi}, key = seed), so the draws of
/// path p never depend on which worker runs it or in which order.
class PathStream {
public:
    enum class Domain : std::uint32_t { Steps = 0, Initial = 1, Auxiliary = 2 };

    PathStream(std::uint64_t seed, std::uint64_t path) noexcept;

    Philox4x32::Counter raw(std::uint32_t index, Domain domain = Domain::Steps) const noexcept;

    /// Two independent standard normals (Box-Muller on one block).
    std::pair<double, double> normal_pair(std::uint32_t index,
                                          Domain domain = Domain::Steps) const noexcept;

    /// Uniform on the open interval (0, 1) with 52 random bits.
    double uniform(std::uint32_t index, Domain domain = Domain::Steps) const noexcept;

private:
    Philox4x32::Key key_;
    std::uint32_t path_lo_;
    std::uint32_t path_hi_;
};

/// Map two 32-bit words to a double in (0, 1).
double to_open_unit(std::uint32_t hi, std::uint32_t lo) noexcept;

}  // namespace wgarch
