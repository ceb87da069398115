#pragma once

#include <array>
#include <cstdint>

namespace stochsym::montecarlo {

/// Philox4x32 with 10 rounds (Salmon et al. counter-based generator).
class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter block(Counter ctr, Key key) noexcept;
};

/// splitmix64 finalizer; used to derive per-path keys from (seed, path).
std::uint64_t mix64(std::uint64_t z) noexcept;

/// Independent stream for one path. Draws are addressed by (a, b) so any
/// value can be regenerated without replaying the stream.
class PathStream {
public:
    PathStream(std::uint64_t seed, std::uint64_t path) noexcept;

    /// Standard normal addressed by (a, b), via Box-Muller on one block.
    double normal(std::uint32_t a, std::uint32_t b) const noexcept;
    /// Uniform in (0, 1) addressed by (a, b).
    double uniform(std::uint32_t a, std::uint32_t b) const noexcept;

private:
    Philox4x32::Key key_;
};

}  // namespace stochsym::montecarlo
