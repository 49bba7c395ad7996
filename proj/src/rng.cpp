#include "coulomb/rng.hpp"

#include "coulomb/errors.hpp"

#include <cmath>
#include <numbers>

namespace coulomb {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kStreamSalt = 0xD1B54A32D192ED03ULL;

std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

} // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed),
      stream_id_(stream_id),
      key_(mix64(mix64(master_seed + kGolden) ^ mix64(stream_id + kStreamSalt))) {}

std::uint64_t RngStream::next_u64() {
    const std::uint64_t out = mix64(key_ + counter_ * kGolden);
    ++counter_;
    return out;
}

double RngStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

RngStream substream(std::uint64_t master_seed, std::uint64_t replica_id) {
    return RngStream(master_seed, replica_id);
}

double sample_gaussian(double mean, double sd, RngStream& rng) {
    if (!(sd >= 0.0) || !std::isfinite(mean) || !std::isfinite(sd))
        throw ParameterError("sample_gaussian: mean/sd out of range");
    const double u1 = rng.uniform_pos();
    const double u2 = rng.uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    return mean + sd * radius * std::cos(2.0 * std::numbers::pi * u2);
}

double sample_gamma(double shape, RngStream& rng) {
    if (!(shape > 0.0) || !std::isfinite(shape))
        throw ParameterError("sample_gamma: shape must be positive");
    if (shape < 1.0) {
        // boost: Gamma(shape) = Gamma(shape+1) * U^(1/shape)
        const double g = sample_gamma(shape + 1.0, rng);
        return g * std::pow(rng.uniform_pos(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = sample_gaussian(0.0, 1.0, rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform_pos();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double sample_beta(double a, double b, RngStream& rng) {
    if (!(a > 0.0) || !(b > 0.0))
        throw ParameterError("sample_beta: shapes must be positive");
    const double x = sample_gamma(a, rng);
    const double y = sample_gamma(b, rng);
    return x / (x + y);
}

} // namespace coulomb
