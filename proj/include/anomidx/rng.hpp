#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace anomidx {

/// Identifies one independent random stream. Equal (master_seed, stream_id)
/// always reproduces the same draws.
struct RngStream {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;
};

inline constexpr std::uint64_t kDefaultSeed = 20240611;

/// SplitMix64 finaliser.
[[nodiscard]] std::uint64_t mix64(std::uint64_t z) noexcept;

/**
 * Draw source for one stream.
 *
 * The engine is std::mt19937_64, whose output sequence is fixed by the
 * standard, seeded with a SplitMix64 hash of (master_seed, stream_id). The
 * conversions to uniforms and normals are done here rather than through the
 * <random> distributions, which are implementation-defined.
 *
 * uniform(): (k + 0.5) * 2^-53 with k the top 53 bits, so always in (0, 1).
 * normal():  Box-Muller; both values of each pair are used.
 */
class Rng {
public:
    explicit Rng(RngStream stream);

    [[nodiscard]] double uniform();
    [[nodiscard]] double normal();
    [[nodiscard]] std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_normal_;
};

}  // namespace anomidx
