#include "hicache/rng.hpp"

#include <cmath>
#include <numbers>

namespace hicache {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kStreamSalt = 0xD1B54A32D192ED03ULL;
}  // namespace

SplitMix64::SplitMix64(std::uint64_t seed) noexcept : key_(mix64(seed ^ kStreamSalt)) {}

SplitMix64::result_type SplitMix64::operator()() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * kGamma);
}

double SplitMix64::uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double SplitMix64::normal() noexcept {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    // u1 in (0, 1] keeps the log finite.
    const double u1 = static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_normal_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

SplitMix64 SplitMix64::substream(std::uint64_t id) const noexcept {
    return SplitMix64(RawKey{}, mix64(key_ ^ mix64(id * kGamma + kStreamSalt)));
}

}  // namespace hicache
