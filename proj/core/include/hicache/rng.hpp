#pragma once

#include <cstdint>
#include <limits>

namespace hicache {

/// Counter-based SplitMix64 stream.
///
/// The i-th output is mix64(key + (i + 1) * golden_gamma), so a stream is
/// fully described by (key, counter) and produces the same sequence on every
/// platform. substream() derives independent keyed children, which is how
/// per-dimension and per-replicate randomness is split.
///
/// Normals use Box-Muller on top of uniform(); std::normal_distribution is
/// avoided because its algorithm is implementation-defined.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;

    /// Standard normal deviate.
    double normal() noexcept;

    /// Child stream keyed by (this key, id). Does not advance this stream.
    SplitMix64 substream(std::uint64_t id) const noexcept;

    std::uint64_t key() const noexcept { return key_; }
    std::uint64_t counter() const noexcept { return counter_; }

private:
    struct RawKey {};
    SplitMix64(RawKey, std::uint64_t key) noexcept : key_(key) {}

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

/// Finalizer from SplitMix64 / MurmurHash3.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace hicache
