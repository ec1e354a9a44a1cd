#include "anomidx/rng.hpp"

#include <cmath>
#include <numbers>

namespace anomidx {

std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27U)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31U);
}

Rng::Rng(RngStream stream)
    : engine_(mix64(mix64(stream.master_seed) ^ mix64(stream.stream_id + 0x632be59bd9b4e019ULL))) {}

double Rng::uniform() {
    constexpr double kScale = 0x1.0p-53;
    return (static_cast<double>(engine_() >> 11U) + 0.5) * kScale;
}

double Rng::normal() {
    if (spare_normal_) {
        const double z = *spare_normal_;
        spare_normal_.reset();
        return z;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_normal_ = radius * std::sin(angle);
    return radius * std::cos(angle);
}

}  // namespace anomidx
